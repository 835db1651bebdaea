#include "sfe/median.hpp"

#include <algorithm>
#include <optional>

#include "sfe/error.hpp"

namespace sfe {

void MedianParams::validate() const {
  if (m == 0 || !is_power_of_two(m)) throw ProtocolError("median: m must be a power of two");
  if (n < 2) throw ProtocolError("median: n must be at least 2");
}

BitString encode_multiset(const std::vector<std::uint64_t>& values, const MedianParams& p) {
  p.validate();
  if (values.size() != p.m) throw ProtocolError("median: each party needs exactly m values");
  BitString out;
  for (auto v : values) {
    if (v < 1 || v > p.n) throw ProtocolError("median: value " + std::to_string(v) + " outside 1..n");
    out.append(BitString::from_uint(v - 1, p.value_bits()));
  }
  return out;
}

namespace {

enum class Phase { Compare, Reveal, Done };

struct MedianReplay {
  std::size_t bits;
  std::size_t k;
  std::size_t q = 0;
  std::uint64_t prefix = 0;
  Phase phase = Phase::Compare;
  Role owner = Role::Alice;
  std::optional<Role> role;
  std::vector<std::uint64_t> list;

  MedianReplay(const MedianParams& p, std::optional<Role> who, const BitString* input)
      : bits(p.value_bits()), k(p.m), role(who) {
    if (input) {
      for (std::size_t i = 0; i < p.m; ++i) list.push_back(input->slice(i * bits, bits).to_uint());
      std::sort(list.begin(), list.end());
    }
  }

  std::uint64_t median() const { return list[(k - 1) / 2]; }
  bool bit_of(std::uint64_t v, std::size_t pos) const { return (v >> (bits - 1 - pos)) & 1U; }

  void clamp() {
    std::size_t rest = bits - q;
    std::uint64_t lo = prefix << rest;
    std::uint64_t hi = lo | ((std::uint64_t{1} << rest) - 1);
    for (auto& v : list) v = std::clamp(v, lo, hi);
  }

  void drop(bool smallest) {
    if (smallest)
      list.erase(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(k / 2));
    else
      list.resize(k / 2);
  }

  void step(bool a_bit, bool b_bit) {
    switch (phase) {
      case Phase::Compare:
        if (!b_bit) {
          prefix = (prefix << 1) | (a_bit ? 1 : 0);
          if (++q == bits) phase = Phase::Done;
        } else if (k >= 2) {
          bool alice_smaller = !a_bit;
          if (role && !list.empty()) {
            drop(*role == Role::Alice ? alice_smaller : !alice_smaller);
            clamp();
          }
          k /= 2;
        } else {
          owner = a_bit ? Role::Bob : Role::Alice;
          prefix <<= 1;
          phase = ++q == bits ? Phase::Done : Phase::Reveal;
        }
        break;
      case Phase::Reveal:
        prefix = (prefix << 1) | ((owner == Role::Alice ? a_bit : b_bit) ? 1 : 0);
        if (++q == bits) phase = Phase::Done;
        break;
      case Phase::Done: break;
    }
  }

  void replay(const TreeNode& v, std::size_t exchanges) {
    for (std::size_t e = 0; e < exchanges; ++e) step(v.path_bit(2 * e), v.path_bit(2 * e + 1));
  }

  bool alice_message() const {
    if (phase == Phase::Compare) return bit_of(median(), q);
    if (phase == Phase::Reveal && owner == Role::Alice) return bit_of(list.front(), q);
    return false;
  }

  bool bob_message(bool a_bit) const {
    if (phase == Phase::Compare) return bit_of(median(), q) != a_bit;
    if (phase == Phase::Reveal && owner == Role::Bob) return bit_of(list.front(), q);
    return false;
  }
};

}  // namespace

ProtocolTree build_median_tree(const MedianParams& p) {
  p.validate();
  ProtocolTree t;
  t.depth = 2 * (ceil_log2(p.m) + p.value_bits());
  t.leaf_bits = ceil_log2(p.n + 1);
  t.alice_label = [p](const TreeNode& v, const BitString& x) {
    MedianReplay r(p, Role::Alice, &x);
    r.replay(v, v.depth / 2);
    return r.alice_message();
  };
  t.bob_label = [p](const TreeNode& v, const BitString& y) {
    MedianReplay r(p, Role::Bob, &y);
    r.replay(v, v.depth / 2);
    return r.bob_message(v.path_bit(v.depth - 1));
  };
  t.leaf_value = [p, depth = t.depth](std::uint64_t leaf) -> std::uint64_t {
    MedianReplay r(p, std::nullopt, nullptr);
    r.replay(TreeNode{depth, leaf}, depth / 2);
    return r.phase == Phase::Done ? r.prefix + 1 : 0;
  };
  return t;
}

std::uint64_t median_oracle(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
  if (x.size() != y.size() || x.empty()) throw ProtocolError("median: inputs must have equal non-zero size");
  std::vector<std::uint64_t> all(x);
  all.insert(all.end(), y.begin(), y.end());
  std::sort(all.begin(), all.end());
  return all[x.size() - 1];
}

MedianResult median_protocol(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y,
                             const MedianParams& p, MedianMode mode, const SessionConfig& cfg) {
  auto tree = build_median_tree(p);
  auto ex = encode_multiset(x, p);
  auto ey = encode_multiset(y, p);
  MedianResult out;
  if (mode == MedianMode::Plaintext) {
    out.value = run_plaintext(tree, ex, ey);
  } else {
    auto run = compile_and_run_cc(cfg, tree, ex, ey);
    out.value = run.value;
    out.meter = std::move(run.meter);
  }
  return out;
}

}  // namespace sfe
