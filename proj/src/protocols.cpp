#include "sfe/protocols.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "sfe/bp_library.hpp"
#include "sfe/cc_tree.hpp"
#include "sfe/error.hpp"
#include "sfe/garbled.hpp"
#include "sfe/indexing.hpp"
#include "sfe/lut.hpp"
#include "sfe/lut_sort.hpp"
#include "sfe/median.hpp"
#include "sfe/oram.hpp"
#include "sfe/privacy.hpp"
#include "sfe/randomized.hpp"

namespace sfe {

using nlohmann::json;

const std::vector<ProtocolInfo>& protocol_registry() {
  static const std::vector<ProtocolInfo> r = {
      {"millionaires", "which of x, y is larger, over revealed random digests",
       {{"n", "16"}, {"eps", "2^-20"}, {"x", "random"}, {"y", "random"}}},
      {"median", "m-th smallest of the union of two m-element multisets over 1..n",
       {{"m", "4"}, {"n", "16"}, {"x", "random"}, {"y", "random"}, {"mode", "compiled"}}},
      {"hamming", "Hamming distance through the protocol-tree compiler", {{"n", "2"}, {"x", "random"}, {"y", "random"}}},
      {"equality", "string equality branching program", {{"w", "4"}, {"x", "random"}, {"y", "random"}}},
      {"dfa", "Alice's automaton on Bob's string",
       {{"states", "2"}, {"start", "0"}, {"accept", "0"}, {"delta", "0/1,1/0"}, {"alpha", "random"}, {"c", "4"}}},
      {"poswise", "x_i != y_i at every position i, n strings of n bits",
       {{"n", "4"}, {"m", "64"}, {"x", "random"}, {"y", "random"}}},
      {"gind-demo", "generalized indexing over random lists", {{"widths", "4,3,5,4"}, {"leaf_bits", "3"}, {"j0", "0"}}},
      {"lut-sort", "LUT-circuit merge sort, first half Alice's, second half Bob's",
       {{"n", "8"}, {"bits", "4"}, {"values", "random"}}},
      {"oram-bench", "amortized touches of the three write-oblivious memories",
       {{"s", "64"}, {"ops", "10000"}, {"scheme", "all"}}},
      {"garbled-demo", "garbled next-message circuits of the Hamming protocol",
       {{"n", "2"}, {"x", "random"}, {"y", "random"}}},
      {"coin-sampling", "statistical distance after replacing coins by t fixed samples",
       {{"n", "3"}, {"t", "256"}}},
      {"privacy", "received-payload indistinguishability check", {{"scenario", "gind"}, {"trials", "2000"}}},
  };
  return r;
}

double parse_probability(const std::string& text) {
  double v = 0;
  try {
    if (text.rfind("2^", 0) == 0)
      v = std::pow(2.0, std::stod(text.substr(2)));
    else
      v = std::stod(text);
  } catch (const std::exception&) {
    throw UsageError("bad probability '" + text + "'");
  }
  if (!(v > 0 && v < 1)) throw UsageError("probability must lie in (0, 1)");
  return v;
}

namespace {

class Params {
 public:
  Params(const ProtocolInfo& info, const std::map<std::string, std::string>& given, const SessionConfig& session)
      : session_(session), rng_(SeededRng::from_u64(session.seed).derive("inputs")) {
    for (const auto& [k, v] : given) {
      bool known = std::any_of(info.params.begin(), info.params.end(), [&](const auto& p) { return p.first == k; });
      if (!known) throw UsageError("protocol '" + info.name + "' has no parameter '" + k + "'");
    }
    for (const auto& [k, def] : info.params) {
      auto it = given.find(k);
      values_[k] = it == given.end() ? def : it->second;
    }
  }

  const std::string& str(const std::string& k) const { return values_.at(k); }
  bool is_random(const std::string& k) const { return str(k) == "random"; }

  std::uint64_t u64(const std::string& k) {
    const auto& s = str(k);
    try {
      std::size_t used = 0;
      auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("parameter " + k + " must be a non-negative integer, got '" + s + "'");
    }
  }

  std::uint64_t u64_or_random(const std::string& k, std::uint64_t bound) {
    std::uint64_t v = is_random(k) ? rng_.uniform_below(bound) : u64(k);
    if (v >= bound) throw UsageError("parameter " + k + " must be below " + std::to_string(bound));
    values_[k] = std::to_string(v);
    return v;
  }

  BitString bits_or_random(const std::string& k, std::size_t len) {
    BitString b;
    if (is_random(k)) {
      b = rng_.bits(len);
    } else {
      const auto& s = str(k);
      if (s.size() != len || s.find_first_not_of("01") != std::string::npos)
        throw UsageError("parameter " + k + " must be a string of " + std::to_string(len) + " bits");
      b = BitString::from_bits(s);
    }
    values_[k] = b.to_string();
    return b;
  }

  std::vector<std::uint64_t> list(const std::string& k) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(str(k));
    std::string item;
    while (std::getline(ss, item, ','))
      try {
        out.push_back(std::stoull(item));
      } catch (const std::exception&) {
        throw UsageError("parameter " + k + " must be a comma-separated list of integers");
      }
    return out;
  }

  std::vector<std::uint64_t> list_or_random(const std::string& k, std::size_t count, std::uint64_t lo,
                                            std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (is_random(k)) {
      for (std::size_t i = 0; i < count; ++i) out.push_back(lo + rng_.uniform_below(hi - lo + 1));
    } else {
      out = list(k);
      if (out.size() != count) throw UsageError("parameter " + k + " needs " + std::to_string(count) + " values");
      for (auto v : out)
        if (v < lo || v > hi) throw UsageError("parameter " + k + " values must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
    }
    std::string s;
    for (std::size_t i = 0; i < out.size(); ++i) s += (i ? "," : "") + std::to_string(out[i]);
    values_[k] = s;
    return out;
  }

  SeededRng& rng() { return rng_; }
  const SessionConfig& session() const { return session_; }
  json to_json() const { return json(values_); }

 private:
  SessionConfig session_;
  SeededRng rng_;
  std::map<std::string, std::string> values_;
};

using Bounds = std::vector<BoundCheck>;

// One protocol run: either both endpoints over a session or a local job.
struct Prepared {
  std::function<json(Party&)> alice;
  std::function<json(Party&)> bob;
  std::function<json(const json& a, const json& b, const CostMeter& m, Bounds& bounds)> finish;
  std::function<json(Bounds& bounds)> local;
};

template <class T>
std::string seq_str(const T& v) {
  std::string s = "[";
  bool first = true;
  for (const auto& x : v) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + "]";
}

void check(Bounds& b, std::string name, std::string expected, std::string observed, bool pass) {
  b.push_back({std::move(name), std::move(expected), std::move(observed), pass});
}

void check_census(Bounds& b, const std::string& name, const std::vector<std::uint64_t>& expected,
                  const CostMeter& m) {
  check(b, name, seq_str(expected), seq_str(m.ot_width_log), m.ot_width_log == expected);
}

BitString share_of(const json& j) { return BitString::from_bits(j.at("share").get<std::string>()); }
json share_json(const BitString& s) { return json{{"share", s.to_string()}}; }
std::uint64_t reconstruct(const json& a, const json& b) { return xor_reconstruct(share_of(a), share_of(b)).to_uint(); }

std::vector<std::uint64_t> bp_census(const BranchingProgram& bp) {
  return {bp.layer_sizes.begin() + 1, bp.layer_sizes.end()};
}

Prepared prepare_bp(const BranchingProgram& bp, const BitString& x, const BitString& y,
                    std::function<json(std::uint64_t, Bounds&)> interpret) {
  auto shared = std::make_shared<BranchingProgram>(bp);
  Prepared p;
  p.alice = [shared, x](Party& a) { return share_json(bp_alice(a, *shared, x)); };
  p.bob = [shared, y](Party& b) { return share_json(bp_bob(b, *shared, y)); };
  p.finish = [shared, interpret](const json& a, const json& b, const CostMeter& m, Bounds& bounds) {
    check_census(bounds, "bp_widths", bp_census(*shared), m);
    return interpret(reconstruct(a, b), bounds);
  };
  return p;
}

Prepared prepare_millionaires(Params& ps) {
  auto n = static_cast<std::size_t>(ps.u64("n"));
  if (n < 2 || n > 64) throw UsageError("millionaires needs 2 <= n <= 64");
  double eps = parse_probability(ps.str("eps"));
  std::uint64_t bound = n == 64 ? UINT64_MAX : (std::uint64_t{1} << n);
  auto xv = ps.u64_or_random("x", bound), yv = ps.u64_or_random("y", bound);
  auto x = BitString::from_uint(xv, n), y = BitString::from_uint(yv, n);
  RandomizedBp rbp;
  rbp.coin_bits = 128;
  rbp.instantiate = [n, eps](const BitString& r) { return bp_millionaires(n, eps, r); };
  auto shape = std::make_shared<BranchingProgram>(rbp.instantiate(BitString(128)));
  Prepared p;
  p.alice = [rbp, x](Party& a) { return share_json(revealed_alice(a, rbp, x)); };
  p.bob = [rbp, y](Party& b) { return share_json(revealed_bob(b, rbp, y)); };
  p.finish = [=](const json& a, const json& b, const CostMeter& m, Bounds& bounds) {
    auto v = static_cast<Comparison>(reconstruct(a, b));
    auto expect = compare_oracle(x, y);
    std::size_t a_bits = millionaires_hash_bits(n, eps);
    std::uint64_t cap = a_bits * ceil_log2(n) * 3;
    check_census(bounds, "bp_widths", bp_census(*shape), m);
    check(bounds, "ot_count", "<= " + std::to_string(cap) + " (3 a ceil(log2 n))", std::to_string(m.total_ots()),
          m.total_ots() <= cap);
    std::uint64_t wmax = m.ot_width_log.empty() ? 0 : *std::max_element(m.ot_width_log.begin(), m.ot_width_log.end());
    check(bounds, "max_width", "<= " + std::to_string(3 * n + 3), std::to_string(wmax), wmax <= 3 * n + 3);
    check(bounds, "seed_bits", "== k", std::to_string(m.seed_bits_sent), m.seed_bits_sent == 128);
    check(bounds, "oracle", comparison_name(expect), comparison_name(v), v == expect);
    return json{{"winner", comparison_name(v)}, {"hash_bits", a_bits}, {"steps", millionaires_steps(n)}};
  };
  return p;
}

Prepared prepare_median(Params& ps) {
  MedianParams mp;
  mp.m = static_cast<std::size_t>(ps.u64("m"));
  mp.n = ps.u64("n");
  mp.validate();
  auto x = ps.list_or_random("x", mp.m, 1, mp.n), y = ps.list_or_random("y", mp.m, 1, mp.n);
  const auto& mode = ps.str("mode");
  if (mode != "compiled" && mode != "plaintext") throw UsageError("median mode must be compiled or plaintext");
  auto tree = std::make_shared<ProtocolTree>(build_median_tree(mp));
  auto expect = median_oracle(x, y);
  Prepared p;
  if (mode == "plaintext") {
    p.local = [=](Bounds& bounds) {
      auto r = median_protocol(x, y, mp, MedianMode::Plaintext);
      check(bounds, "oracle", std::to_string(expect), std::to_string(r.value), r.value == expect);
      return json{{"median", r.value}};
    };
    return p;
  }
  auto ex = encode_multiset(x, mp), ey = encode_multiset(y, mp);
  p.alice = [tree, ex](Party& a) { return share_json(cc_alice(a, *tree, ex)); };
  p.bob = [tree, ey](Party& b) { return share_json(cc_bob(b, *tree, ey)); };
  p.finish = [=](const json& a, const json& b, const CostMeter& m, Bounds& bounds) {
    auto v = reconstruct(a, b);
    std::vector<std::uint64_t> widths;
    for (std::size_t l = 1; l <= tree->depth; ++l) widths.push_back(std::uint64_t{1} << l);
    check_census(bounds, "cc_widths", widths, m);
    check(bounds, "oracle", std::to_string(expect), std::to_string(v), v == expect);
    return json{{"median", v}, {"depth", tree->depth}};
  };
  return p;
}

Prepared prepare_hamming(Params& ps) {
  auto n = static_cast<std::size_t>(ps.u64("n"));
  if (n < 1 || n > 8) throw UsageError("hamming needs 1 <= n <= 8");
  auto x = ps.bits_or_random("x", n), y = ps.bits_or_random("y", n);
  auto tree = std::make_shared<ProtocolTree>(build_hamming_tree(n));
  Prepared p;
  p.alice = [tree, x](Party& a) { return share_json(cc_alice(a, *tree, x)); };
  p.bob = [tree, y](Party& b) { return share_json(cc_bob(b, *tree, y)); };
  p.finish = [=](const json& a, const json& b, const CostMeter& m, Bounds& bounds) {
    auto v = reconstruct(a, b);
    std::vector<std::uint64_t> widths;
    for (std::size_t l = 1; l <= tree->depth; ++l) widths.push_back(std::uint64_t{1} << l);
    check_census(bounds, "cc_widths", widths, m);
    auto expect = (x ^ y).popcount();
    check(bounds, "oracle", std::to_string(expect), std::to_string(v), v == expect);
    return json{{"value", v}};
  };
  return p;
}

Prepared prepare_equality(Params& ps) {
  auto w = static_cast<std::size_t>(ps.u64("w"));
  if (w < 1 || w > 64) throw UsageError("equality needs 1 <= w <= 64");
  auto x = ps.bits_or_random("x", w), y = ps.bits_or_random("y", w);
  return prepare_bp(bp_string_equality(w), x, y, [x, y](std::uint64_t v, Bounds& bounds) {
    std::uint64_t expect = x == y ? 1 : 0;
    check(bounds, "oracle", std::to_string(expect), std::to_string(v), v == expect);
    return json{{"equal", v}};
  });
}

Prepared prepare_dfa(Params& ps) {
  Dfa d;
  d.states = static_cast<std::size_t>(ps.u64("states"));
  d.start = static_cast<std::size_t>(ps.u64("start"));
  d.accept = static_cast<std::size_t>(ps.u64("accept"));
  std::stringstream ss(ps.str("delta"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto slash = item.find('/');
    if (slash == std::string::npos) throw UsageError("delta entries look like a/b");
    try {
      d.delta.push_back({std::stoul(item.substr(0, slash)), std::stoul(item.substr(slash + 1))});
    } catch (const std::exception&) {
      throw UsageError("delta entries look like a/b");
    }
  }
  try {
    d.validate();
  } catch (const ProtocolError& e) {
    throw UsageError(e.what());
  }
  auto c = static_cast<std::size_t>(ps.u64("c"));
  if (c < 1 || c > 64) throw UsageError("dfa needs 1 <= c <= 64");
  auto alpha = ps.bits_or_random("alpha", c);
  auto prog = bp_dfa_accept(d, c);
  return prepare_bp(prog.bp, prog.alice_input, alpha, [d, alpha](std::uint64_t v, Bounds& bounds) {
    std::uint64_t expect = d.accepts(alpha) ? 1 : 0;
    check(bounds, "oracle", std::to_string(expect), std::to_string(v), v == expect);
    return json{{"accept", v}};
  });
}

Prepared prepare_poswise(Params& ps) {
  auto n = static_cast<std::size_t>(ps.u64("n"));
  auto m = static_cast<std::size_t>(ps.u64("m"));
  if (n < 1 || n > 16 || m < 1 || m > 256) throw UsageError("poswise needs 1 <= n <= 16 and 1 <= m <= 256");
  auto x = ps.bits_or_random("x", n * n), y = ps.bits_or_random("y", n * n);
  RandomizedBp rbp;
  rbp.coin_bits = 128;
  rbp.instantiate = [n, m](const BitString& r) { return bp_positionwise_inequality(n, m, r); };
  auto shape = std::make_shared<BranchingProgram>(rbp.instantiate(BitString(128)));
  Prepared p;
  p.alice = [rbp, x](Party& a) { return share_json(revealed_alice(a, rbp, x)); };
  p.bob = [rbp, y](Party& b) { return share_json(revealed_bob(b, rbp, y)); };
  p.finish = [=](const json& a, const json& b, const CostMeter& meter, Bounds& bounds) {
    auto v = reconstruct(a, b);
    std::uint64_t expect = positionwise_oracle(x, y, n) ? 1 : 0;
    check_census(bounds, "bp_widths", bp_census(*shape), meter);
    check(bounds, "oracle", std::to_string(expect), std::to_string(v), v == expect);
    return json{{"all_differ", v}};
  };
  return p;
}

Prepared prepare_gind(Params& ps) {
  GIndShape shape;
  shape.widths = ps.list("widths");
  shape.leaf_bits = static_cast<std::size_t>(ps.u64("leaf_bits"));
  try {
    shape.validate();
  } catch (const ProtocolError& e) {
    throw UsageError(e.what());
  }
  if (shape.leaf_bits < 1 || shape.leaf_bits > 64) throw UsageError("leaf_bits must be 1..64");
  auto j0 = ps.u64_or_random("j0", shape.widths[0]);
  std::vector<IndexedList> levels;
  for (std::size_t l = 1; l <= shape.levels(); ++l) {
    std::uint64_t range = l == shape.levels() ? (shape.leaf_bits >= 64 ? UINT64_MAX : std::uint64_t{1} << shape.leaf_bits)
                                              : shape.widths[l];
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = 0; i < shape.widths[l - 1]; ++i) v.push_back(ps.rng().uniform_below(range));
    levels.push_back(IndexedList::from_uints(v, shape.out_domain(l).bits));
  }
  std::vector<IndexedList> a, b;
  for (std::size_t l = 1; l <= shape.levels(); ++l) (l % 2 ? b : a).push_back(levels[l - 1]);
  auto expect = gind_plain(shape, j0, levels).to_uint();
  Prepared p;
  p.alice = [=](Party& party) { return share_json(gind_alice_public(party, shape, j0, a)); };
  p.bob = [=](Party& party) { return share_json(gind_bob_public(party, shape, b)); };
  p.finish = [=](const json& sa, const json& sb, const CostMeter& m, Bounds& bounds) {
    auto v = reconstruct(sa, sb);
    check_census(bounds, "gind_widths", shape.widths, m);
    check(bounds, "oracle", std::to_string(expect), std::to_string(v), v == expect);
    return json{{"value", v}};
  };
  return p;
}

Prepared prepare_lut_sort(Params& ps) {
  auto n = static_cast<std::size_t>(ps.u64("n"));
  auto bits = static_cast<std::size_t>(ps.u64("bits"));
  if (n < 1 || n > 64 || !is_power_of_two(n) || bits < 1 || bits > 16)
    throw UsageError("lut-sort needs n a power of two up to 64 and 1 <= bits <= 16");
  auto values = ps.list_or_random("values", n, 0, (std::uint64_t{1} << bits) - 1);
  auto sc = std::make_shared<SortCircuit>(build_sort_circuit(n, bits));
  std::size_t half = n == 1 ? 1 : n / 2;
  auto a_in = pack_values({values.begin(), values.begin() + static_cast<std::ptrdiff_t>(half)}, bits);
  auto b_in = pack_values({values.begin() + static_cast<std::ptrdiff_t>(half), values.end()}, bits);
  Prepared p;
  p.alice = [sc, a_in](Party& a) { return share_json(eval_lut_alice(a, sc->circuit, a_in)); };
  p.bob = [sc, b_in](Party& b) { return share_json(eval_lut_bob(b, sc->circuit, b_in)); };
  p.finish = [=](const json& a, const json& b, const CostMeter& m, Bounds& bounds) {
    auto sorted = unpack_values(xor_reconstruct(share_of(a), share_of(b)), bits);
    auto expect = values;
    std::sort(expect.begin(), expect.end());
    auto census = sc->circuit.ot_census();
    check(bounds, "lut_census", "2 OTs per gate, " + std::to_string(sc->circuit.gates.size()) + " gates",
          std::to_string(m.total_ots()), m.ot_by_width == census);
    std::size_t gadgets = n * ceil_log2(n);
    check(bounds, "gadgets", "n log2 n = " + std::to_string(gadgets), std::to_string(sc->gadgets), sc->gadgets == gadgets);
    check(bounds, "oracle", seq_str(expect), seq_str(sorted), sorted == expect);
    return json{{"sorted", sorted}, {"gates", sc->circuit.gates.size()}, {"depth", sc->circuit.depth()}};
  };
  return p;
}

Prepared prepare_oram(Params& ps) {
  auto s = ps.u64("s");
  auto ops = static_cast<std::size_t>(ps.u64("ops"));
  if (s < 2 || s > (1u << 16)) throw UsageError("oram-bench needs 2 <= s <= 65536");
  std::vector<std::string> schemes;
  if (ps.str("scheme") == "all")
    schemes = {"basic", "sqrt", "hier"};
  else
    schemes = {ps.str("scheme")};
  auto seed = ps.rng().uniform_below(UINT32_MAX);
  Prepared p;
  p.local = [=](Bounds& bounds) {
    auto op_list = random_ops(s, ops, seed);
    std::size_t writes = static_cast<std::size_t>(std::count_if(op_list.begin(), op_list.end(), [](const OramOp& o) { return o.write; }));
    json rows = json::array();
    for (const auto& sc : schemes) {
      auto b = bench_memory(sc, s, op_list);
      check(bounds, sc + "_oracle", "matches flat array", b.matches_oracle ? "matches" : "differs", b.matches_oracle);
      if (sc == "basic")
        check(bounds, "basic_write_touches", "s per write = " + std::to_string(s * writes), std::to_string(b.write_touches),
              b.write_touches == s * writes);
      if (sc == "sqrt") {
        std::ostringstream os;
        os << b.constant;
        check(bounds, "sqrt_constant", "<= 4", os.str(), b.constant <= 4.0);
      }
      if (sc == "hier") {
        std::ostringstream os;
        os << b.constant;
        check(bounds, "hier_constant", "<= 8", os.str(), b.constant <= 8.0);
      }
      rows.push_back({{"scheme", sc},
                      {"s", s},
                      {"ops", b.ops},
                      {"touches", b.touches},
                      {"write_touches", b.write_touches},
                      {"touches_per_op", b.touches_per_op},
                      {"constant", b.constant}});
    }
    return json{{"schemes", rows}};
  };
  return p;
}

Prepared prepare_garbled(Params& ps) {
  auto n = static_cast<std::size_t>(ps.u64("n"));
  if (n < 1 || n > 4) throw UsageError("garbled-demo needs 1 <= n <= 4");
  auto x = ps.bits_or_random("x", n), y = ps.bits_or_random("y", n);
  auto tree = build_hamming_tree(n);
  auto ac = std::make_shared<NextMessageCircuit>(tree_alice_circuit(tree, x));
  auto bc = std::make_shared<NextMessageCircuit>(tree_bob_circuit(tree, y));
  auto as = std::make_shared<NextMessageCircuit>(ac->public_shape());
  auto bs = std::make_shared<NextMessageCircuit>(bc->public_shape());
  bool reduced = ps.session().ot == OtKind::Ot12;
  Prepared p;
  p.alice = [ac, bs](Party& a) { return json{{"z", garbled_alice(a, *ac, *bs).to_uint()}}; };
  p.bob = [bc, as](Party& b) {
    garbled_bob(b, *bc, *as);
    return json::object();
  };
  p.finish = [=](const json& a, const json&, const CostMeter& m, Bounds& bounds) {
    auto z = a.at("z").get<std::uint64_t>();
    std::uint64_t c = 2 * n;
    std::size_t gates = ac->gates.size() + bc->gates.size();
    check(bounds, "ot_census", "{2: " + std::to_string(c) + "}", std::to_string(m.total_ots()),
          m.ot_by_width == std::map<std::uint64_t, std::uint64_t>{{2, c}});
    std::uint64_t reduction = 0;
    if (reduced)
      for (auto [w, count] : m.ot_by_width) reduction += count * (w + 1) * ceil_log2(w);
    std::uint64_t prf_cap = 10 * gates + reduction;
    check(bounds, "prf_evals",
          "<= 10 per gate + " + std::to_string(reduction) + " for the OT reduction = " + std::to_string(prf_cap),
          std::to_string(m.prf_evals), m.prf_evals <= prf_cap);
    auto expect = (x ^ y).popcount();
    check(bounds, "oracle", std::to_string(expect), std::to_string(z), z == expect);
    return json{{"z", z}, {"messages", c}, {"gates", gates}};
  };
  return p;
}

Prepared prepare_coin_sampling(Params& ps) {
  auto n = static_cast<std::size_t>(ps.u64("n"));
  auto t = static_cast<std::size_t>(ps.u64("t"));
  if (n < 1 || n > 6 || t < 1) throw UsageError("coin-sampling needs 1 <= n <= 6 and t >= 1");
  auto seed = ps.rng().uniform_below(UINT32_MAX);
  Prepared p;
  p.local = [=](Bounds& bounds) {
    auto base = inner_product_equality(n);
    auto rng = SeededRng::from_u64(seed);
    auto sampled = reduce_randomness(base, t, rng);
    double d = max_statistical_distance(base, sampled, n);
    std::ostringstream os;
    os << d;
    check(bounds, "distance", "<= 0.1", os.str(), d <= 0.1);
    return json{{"max_distance", d}, {"selector_bits", sampled.selector_bits()}};
  };
  return p;
}

Prepared prepare_privacy(Params& ps) {
  auto scenario = ps.str("scenario");
  auto trials = static_cast<std::size_t>(ps.u64("trials"));
  auto names = privacy_scenarios();
  if (std::find(names.begin(), names.end(), scenario) == names.end())
    throw UsageError("unknown privacy scenario '" + scenario + "'");
  auto seed = ps.rng().uniform_below(UINT32_MAX);
  Prepared p;
  p.local = [=](Bounds& bounds) {
    json rows = json::array();
    for (const auto& r : privacy_smoke(scenario, trials, seed)) {
      std::ostringstream os;
      os << r.max_z;
      bool want_fail = scenario == "gind-leaky";
      check(bounds, std::string("privacy_") + role_name(r.observer), want_fail ? "fail" : "pass", verdict_name(r.verdict),
            r.verdict == (want_fail ? Verdict::Fail : Verdict::Pass));
      rows.push_back({{"observer", role_name(r.observer)},
                      {"trials", r.trials},
                      {"positions", r.positions},
                      {"max_z", os.str()},
                      {"offending", r.offending},
                      {"verdict", verdict_name(r.verdict)},
                      {"note", r.note}});
    }
    return json{{"observers", rows}};
  };
  return p;
}

Prepared prepare(const std::string& name, Params& ps) {
  if (name == "millionaires") return prepare_millionaires(ps);
  if (name == "median") return prepare_median(ps);
  if (name == "hamming") return prepare_hamming(ps);
  if (name == "equality") return prepare_equality(ps);
  if (name == "dfa") return prepare_dfa(ps);
  if (name == "poswise") return prepare_poswise(ps);
  if (name == "gind-demo") return prepare_gind(ps);
  if (name == "lut-sort") return prepare_lut_sort(ps);
  if (name == "oram-bench") return prepare_oram(ps);
  if (name == "garbled-demo") return prepare_garbled(ps);
  if (name == "coin-sampling") return prepare_coin_sampling(ps);
  if (name == "privacy") return prepare_privacy(ps);
  throw UsageError("unknown protocol '" + name + "'");
}

json run_two_process(const RunConfig& cfg, const Prepared& p) {
  if (cfg.session.ot == OtKind::Ideal || (cfg.session.ot == OtKind::Ot12 && cfg.session.ot12_base == OtKind::Ideal))
    throw UsageError("two-process runs need --ot group or --ot ot12 over group");
  Role role = cfg.listen_port ? Role::Bob : Role::Alice;
  std::unique_ptr<Channel> ch;
  std::unique_ptr<TcpListener> listener;
  if (cfg.listen_port) {
    listener = std::make_unique<TcpListener>(*cfg.listen_port);
    ch = listener->accept();
  } else {
    auto [host, port] = parse_host_port(cfg.connect);
    ch = tcp_connect(host, port);
  }
  auto ot = make_ot_backend(cfg.session.ot, cfg.session.ot12_base, nullptr);
  Party party(role, *ch, *ot, party_rng(cfg.session.seed, role), cfg.session.security);
  json out = role == Role::Alice ? p.alice(party) : p.bob(party);
  party.sync_channel_stats();
  ch->close();
  return json{{"role", role_name(role)}, {"endpoint_output", out}, {"endpoint_meter", party.meter().to_json()}};
}

}  // namespace

json run_cli(const RunConfig& cfg) {
  auto it = std::find_if(protocol_registry().begin(), protocol_registry().end(),
                         [&](const ProtocolInfo& i) { return i.name == cfg.protocol; });
  if (it == protocol_registry().end()) throw UsageError("unknown protocol '" + cfg.protocol + "'");
  if (cfg.session.security.k < 8 || cfg.session.security.k % 8 != 0)
    throw UsageError("security parameter k must be a positive multiple of 8");
  Params ps(*it, cfg.params, cfg.session);
  auto start = std::chrono::steady_clock::now();
  Prepared p = prepare(cfg.protocol, ps);

  json report;
  report["schema"] = kReportSchema;
  report["protocol"] = cfg.protocol;
  report["params"] = ps.to_json();
  report["seed"] = cfg.session.seed;
  report["transport"] = transport_name(cfg.session.transport);
  report["ot"] = ot_kind_name(cfg.session.ot);
  report["k"] = cfg.session.security.k;

  Bounds bounds;
  if (cfg.listen_port || !cfg.connect.empty()) {
    if (!p.alice) throw UsageError("protocol '" + cfg.protocol + "' runs locally only");
    report["mode"] = "two-process";
    report["transport"] = transport_name(Transport::Tcp);
    report.update(run_two_process(cfg, p));
  } else if (p.local) {
    report["mode"] = "local";
    report["outputs"] = p.local(bounds);
  } else {
    report["mode"] = "in-process";
    auto r = run_session(cfg.session, p.alice, p.bob);
    report["outputs"] = p.finish(r.alice, r.bob, r.meter, bounds);
    report["shares"] = json{{"A", r.alice}, {"B", r.bob}};
    report["meter"] = r.meter.to_json();
  }
  json checks = json::array();
  bool ok = true;
  for (const auto& b : bounds) {
    checks.push_back({{"name", b.name}, {"expected", b.expected}, {"observed", b.observed}, {"pass", b.pass}});
    ok = ok && b.pass;
  }
  report["bounds"] = checks;
  report["ok"] = ok;
  if (cfg.timing)
    report["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sfe
