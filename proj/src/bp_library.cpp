#include "sfe/bp_library.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "sfe/crypto.hpp"
#include "sfe/error.hpp"

namespace sfe {

BpTable bp_string_equality_table(std::size_t w) {
  if (w == 0) throw ProtocolError("string equality needs w >= 1");
  BpTable t;
  t.leaf_bits = 1;
  t.layer_sizes.push_back(1);
  t.layers.push_back({BpTableNode{0, {0, 1}}});
  for (std::size_t i = 0; i < w; ++i) {
    bool first = i == 0;
    // Bob: got0 / got1 (/ trap) -> live / trap
    t.layer_sizes.push_back(first ? 2 : 3);
    std::vector<BpTableNode> bob{BpTableNode{i, {0, 1}}, BpTableNode{i, {1, 0}}};
    if (!first) bob.push_back(BpTableNode{BpTableNode::kNoRead, {1, 1}});
    t.layers.push_back(bob);
    t.layer_sizes.push_back(2);
    if (i + 1 < w) t.layers.push_back({BpTableNode{i + 1, {0, 1}}, BpTableNode{BpTableNode::kNoRead, {2, 2}}});
  }
  t.leaves = {1, 0};
  return t;
}

BranchingProgram bp_string_equality(std::size_t w) { return bp_string_equality_table(w).to_program(); }

void Dfa::validate() const {
  if (states == 0) throw ProtocolError("automaton needs at least one state");
  if (start >= states || accept >= states) throw ProtocolError("automaton start/accept out of range");
  if (delta.size() != states) throw ProtocolError("automaton transition table must cover every state");
  for (const auto& d : delta)
    if (d[0] >= states || d[1] >= states) throw ProtocolError("automaton transition out of range");
}

std::size_t Dfa::run(const BitString& alpha) const {
  validate();
  std::size_t q = start;
  for (std::size_t i = 0; i < alpha.size(); ++i) q = delta[q][alpha.get(i) ? 1 : 0];
  return q;
}

namespace {

std::size_t dfa_field_bits(std::size_t states) { return std::max<std::size_t>(1, ceil_log2(states)); }

}  // namespace

BitString encode_dfa(const Dfa& dfa) {
  dfa.validate();
  std::size_t b = dfa_field_bits(dfa.states);
  BitString out = BitString::from_uint(dfa.start, b).concat(BitString::from_uint(dfa.accept, b));
  for (const auto& d : dfa.delta) out.append(BitString::from_uint(d[0], b)).append(BitString::from_uint(d[1], b));
  return out;
}

DfaProgram bp_dfa_accept(const Dfa& dfa, std::size_t c) {
  if (c == 0) throw ProtocolError("DFA program needs input length >= 1");
  dfa.validate();
  std::size_t q = dfa.states;
  std::size_t b = dfa_field_bits(q);
  DfaProgram out;
  out.alice_input = encode_dfa(dfa);
  auto& bp = out.bp;
  bp.layer_sizes.push_back(1);
  for (std::size_t s = 0; s < c; ++s) {
    bp.layer_sizes.push_back(q);
    bp.layer_sizes.push_back(2 * q);
  }
  bp.layer_sizes.push_back(2);
  bp.layer_sizes.push_back(2);
  bp.leaves = {0, 1};
  bp.leaf_bits = 1;
  bp.next = [b, c](std::size_t layer, std::uint64_t node, const BitString& in) -> std::uint64_t {
    auto field = [&](std::size_t i) { return in.slice(i * b, b).to_uint(); };
    if (layer == 0) return field(0);
    if (layer == 2 * c + 1) return node;
    if (layer % 2 == 1) return 2 * node + (in.get((layer - 1) / 2) ? 1 : 0);
    std::uint64_t next_state = field(2 + node);  // delta[node / 2][node % 2]
    if (layer == 2 * c) return next_state == field(1) ? 1 : 0;
    return next_state;
  };
  bp.validate();
  return out;
}

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "equal";
    case Comparison::XLarger: return "x";
    case Comparison::YLarger: return "y";
  }
  return "?";
}

std::uint64_t first_diff_oracle(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw ProtocolError("inputs must have equal length");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.get(i) != y.get(i)) return i;
  return x.size();
}

Comparison compare_oracle(const BitString& x, const BitString& y) {
  auto i = first_diff_oracle(x, y);
  if (i == x.size()) return Comparison::Equal;
  return x.get(i) ? Comparison::XLarger : Comparison::YLarger;
}

std::size_t millionaires_steps(std::size_t n) { return ceil_log2(n); }

std::size_t millionaires_hash_bits(std::size_t n, double eps) {
  if (n < 2) throw ProtocolError("millionaires needs n >= 2");
  if (!(eps > 0) || eps >= 1.0 / static_cast<double>(n)) throw ProtocolError("millionaires needs 0 < eps < 1/n");
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(ceil_log2(n)) / eps) - 1e-9));
}

BitString prefix_digest(const BitString& seed, std::size_t i, const BitString& prefix, std::size_t a) {
  BitString label = BitString::from_uint('h', 8).concat(BitString::from_uint(i, 32));
  return prf_eval(prf_eval(seed, label, 128), prefix, a);
}

namespace {

struct Interval {
  std::uint64_t lo, hi;
  bool operator<(const Interval& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  std::uint64_t mid() const { return lo < hi ? (lo + hi + 1) / 2 : lo; }
  Interval pass() const { return lo < hi ? Interval{mid(), hi} : *this; }
  Interval fail() const { return lo < hi ? Interval{lo, mid() - 1} : *this; }
};

// Public skeleton of the binary search: the reachable intervals before each
// step, and a digest cache shared by the label callbacks.
struct SearchPlan {
  std::size_t n = 0, a = 0, steps = 0;
  BitString seed;
  std::vector<std::vector<Interval>> intervals;  // steps + 1 entries
  std::mutex mu;
  std::map<std::pair<std::vector<std::uint8_t>, std::uint64_t>, BitString> digests;

  std::uint64_t index_of(std::size_t step, const Interval& iv) const {
    const auto& v = intervals[step];
    return static_cast<std::uint64_t>(std::lower_bound(v.begin(), v.end(), iv) - v.begin());
  }

  BitString digest(const BitString& input, std::uint64_t len) {
    auto key = std::make_pair(input.serialize(), len);
    std::lock_guard lk(mu);
    auto it = digests.find(key);
    if (it != digests.end()) return it->second;
    if (digests.size() > 8192) digests.clear();
    auto d = prefix_digest(seed, len, input.slice(0, len), a);
    digests.emplace(std::move(key), d);
    return d;
  }
};

std::shared_ptr<SearchPlan> make_search_plan(std::size_t n, double eps, const BitString& seed) {
  auto p = std::make_shared<SearchPlan>();
  p->n = n;
  p->a = millionaires_hash_bits(n, eps);
  p->steps = millionaires_steps(n);
  p->seed = seed;
  p->intervals.push_back({Interval{0, n - 1}});
  for (std::size_t t = 0; t < p->steps; ++t) {
    std::vector<Interval> nxt;
    for (const auto& iv : p->intervals[t]) {
      nxt.push_back(iv.pass());
      nxt.push_back(iv.fail());
    }
    std::sort(nxt.begin(), nxt.end());
    nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
    p->intervals.push_back(std::move(nxt));
  }
  for (const auto& iv : p->intervals.back())
    if (iv.lo != iv.hi) throw ProtocolError("binary search did not converge");
  return p;
}

BranchingProgram search_program(std::shared_ptr<SearchPlan> plan, bool first_diff) {
  const std::size_t a = plan->a, steps = plan->steps, n = plan->n;
  BranchingProgram bp;
  for (std::size_t t = 0; t < steps; ++t) {
    std::uint64_t k = plan->intervals[t].size();
    for (std::size_t b = 0; b < a; ++b) {
      bp.layer_sizes.push_back(b == 0 ? k : 2 * k);  // Alice: live (/ trap)
      bp.layer_sizes.push_back(b == 0 ? 2 * k : 3 * k);  // Bob: got0, got1 (/ trap)
    }
  }
  bp.layer_sizes.push_back(plan->intervals.back().size());
  bp.layer_sizes.push_back(2 * plan->intervals.back().size());
  if (first_diff) {
    bp.layer_sizes.push_back(n + 1);
    bp.leaf_bits = ceil_log2(n + 1);
    for (std::uint64_t i = 0; i <= n; ++i) bp.leaves.push_back(i);
  } else {
    bp.layer_sizes.push_back(3);
    bp.leaf_bits = 2;
    bp.leaves = {0, 1, 2};
  }

  bp.next = [plan, a, steps, first_diff, n](std::size_t layer, std::uint64_t node,
                                            const BitString& in) -> std::uint64_t {
    std::size_t search_layers = 2 * a * steps;
    if (layer >= search_layers) {
      const auto& finals = plan->intervals.back();
      if (layer == search_layers) {
        std::uint64_t pos = finals[node].lo;
        return 2 * node + (in.get(pos) ? 1 : 0);
      }
      std::uint64_t pos = finals[node / 2].lo;
      bool xb = node % 2 == 1, yb = in.get(pos);
      if (xb == yb) return first_diff ? n : static_cast<std::uint64_t>(Comparison::Equal);
      if (first_diff) return pos;
      return static_cast<std::uint64_t>(xb ? Comparison::XLarger : Comparison::YLarger);
    }
    std::size_t t = layer / (2 * a);
    std::size_t b = (layer % (2 * a)) / 2;
    bool alice = layer % 2 == 0;
    if (alice) {
      std::uint64_t iv = b == 0 ? node : node / 2;
      bool trap = b != 0 && node % 2 == 1;
      if (trap) return 3 * iv + 2;
      bool bit = plan->digest(in, plan->intervals[t][iv].mid()).get(b);
      return (b == 0 ? 2 : 3) * iv + (bit ? 1 : 0);
    }
    std::uint64_t iv = b == 0 ? node / 2 : node / 3;
    std::uint64_t status = b == 0 ? node % 2 : node % 3;
    bool trap = status == 2 || plan->digest(in, plan->intervals[t][iv].mid()).get(b) != (status == 1);
    if (b + 1 < a) return 2 * iv + (trap ? 1 : 0);
    const Interval& cur = plan->intervals[t][iv];
    return plan->index_of(t + 1, trap ? cur.fail() : cur.pass());
  };
  bp.validate();
  return bp;
}

}  // namespace

BranchingProgram bp_millionaires(std::size_t n, double eps, const BitString& shared_seed) {
  return search_program(make_search_plan(n, eps, shared_seed), false);
}

BranchingProgram bp_first_diff(std::size_t n, double eps, const BitString& shared_seed) {
  return search_program(make_search_plan(n, eps, shared_seed), true);
}

BranchingProgram bp_positionwise_inequality(std::size_t n, std::size_t m, const BitString& shared_seed) {
  if (n == 0 || m <= n) throw ProtocolError("position-wise inequality needs m > n >= 1");
  auto r = std::make_shared<BitString>(prg_expand(shared_seed, n * m));
  BranchingProgram bp;
  bp.layer_sizes.push_back(1);
  for (std::size_t j = 0; j < m; ++j) {
    bp.layer_sizes.push_back(2 * n + 1);
    bp.layer_sizes.push_back(n + 1);
  }
  bp.leaf_bits = 1;
  bp.leaves.assign(n + 1, 1);
  bp.leaves[n] = 0;
  bp.next = [n, r](std::size_t layer, std::uint64_t node, const BitString& in) -> std::uint64_t {
    std::size_t j = layer / 2;
    auto ip = [&](std::uint64_t row) {
      BitString prod = in.slice(row * n, n);
      BitString rj = r->slice(j * n, n);
      std::size_t ones = 0;
      for (std::size_t i = 0; i < n; ++i) ones += prod.get(i) && rj.get(i) ? 1 : 0;
      return ones % 2 == 1;
    };
    if (layer % 2 == 0) {
      if (node == n) return 2 * n;
      return 2 * node + (ip(node) ? 1 : 0);
    }
    if (node == 2 * n) return n;
    std::uint64_t row = node / 2;
    if (ip(row) == (node % 2 == 1)) return row;
    return row + 1;
  };
  bp.validate();
  return bp;
}

bool positionwise_oracle(const BitString& x, const BitString& y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (x.slice(i * n, n) == y.slice(i * n, n)) return true;
  return false;
}

}  // namespace sfe
