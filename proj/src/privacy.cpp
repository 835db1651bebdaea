#include "sfe/privacy.hpp"

#include <cmath>

#include "sfe/cc_tree.hpp"
#include "sfe/error.hpp"
#include "sfe/garbled.hpp"
#include "sfe/indexing.hpp"
#include "sfe/lut.hpp"
#include "sfe/session.hpp"

namespace sfe {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

PrivacyReport privacy_check(const std::string& scenario, Role observer, const ViewSampler& sampler, std::size_t trials,
                            std::uint64_t seed) {
  PrivacyReport r;
  r.scenario = scenario;
  r.observer = observer;
  r.trials = trials;
  std::size_t per_group = trials / 2;
  if (per_group < 2) {
    r.note = "too few trials";
    return r;
  }
  std::vector<std::vector<double>> sum(2), sq(2);
  std::size_t len = 0;
  for (int g = 0; g < 2; ++g) {
    for (std::size_t t = 0; t < per_group; ++t) {
      auto view = sampler(seed * 1000003 + 2 * t + static_cast<std::uint64_t>(g), g);
      if (g == 0 && t == 0) {
        len = view.size();
        for (auto& v : sum) v.assign(len, 0);
        for (auto& v : sq) v.assign(len, 0);
      }
      if (view.size() != len) {
        r.verdict = Verdict::Fail;
        r.note = "view length depends on the counterpart's input";
        return r;
      }
      for (std::size_t i = 0; i < len; ++i) {
        sum[static_cast<std::size_t>(g)][i] += view[i];
        sq[static_cast<std::size_t>(g)][i] += static_cast<double>(view[i]) * view[i];
      }
    }
  }
  r.positions = len;
  double n = static_cast<double>(per_group);
  for (std::size_t i = 0; i < len; ++i) {
    double m0 = sum[0][i] / n, m1 = sum[1][i] / n;
    double v0 = std::max(0.0, sq[0][i] / n - m0 * m0) * n / (n - 1);
    double v1 = std::max(0.0, sq[1][i] / n - m1 * m1) * n / (n - 1);
    double se = std::sqrt(v0 / n + v1 / n);
    double z = se > 0 ? std::abs(m0 - m1) / se : (m0 == m1 ? 0.0 : INFINITY);
    r.max_z = std::max(r.max_z, z);
    if (z > kPrivacySigmas) r.offending.push_back(i);
  }
  r.verdict = r.offending.empty() ? Verdict::Pass : Verdict::Fail;
  return r;
}

namespace {

SessionConfig view_config(std::uint64_t seed, std::size_t k = 128) {
  SessionConfig cfg;
  cfg.seed = seed;
  cfg.record_views = true;
  cfg.security.k = k;
  return cfg;
}

template <class R>
std::vector<std::uint8_t> pick(const R& r, Role observer) {
  return observer == Role::Alice ? r.alice_view : r.bob_view;
}

// GInd over widths 4, 3, 5, 4 with 3-bit leaves. Each variant of the varied
// party's input reaches a different path but the same leaf value.
struct GIndScenario {
  GIndShape shape{{4, 3, 5, 4}, 3};
  std::uint64_t j0[2];
  std::vector<IndexedList> alice[2];
  std::vector<IndexedList> bob[2];

  static IndexedList random_list(SeededRng& rng, std::size_t w, std::uint64_t range, std::size_t bits) {
    std::vector<std::uint64_t> v;
    for (std::size_t i = 0; i < w; ++i) v.push_back(rng.uniform_below(range));
    return IndexedList::from_uints(v, bits);
  }

  explicit GIndScenario(Role observer) {
    auto rng = SeededRng::from_u64(77);
    auto fixed_j0 = rng.uniform_below(4);
    auto y1 = random_list(rng, 4, 3, 2), y3 = random_list(rng, 5, 4, 2);
    auto x2 = random_list(rng, 3, 5, 3), x4 = random_list(rng, 4, 8, 3);
    const std::uint64_t target = 5;
    x4.entries[2] = BitString::from_uint(target, 3);
    for (int v = 0; v < 2; ++v) {
      j0[v] = fixed_j0;
      auto a2 = x2, a4 = x4, b1 = y1, b3 = y3;
      if (observer == Role::Alice) {
        b1.entries[fixed_j0] = BitString::from_uint(static_cast<std::uint64_t>(v), 2);
        b3.entries[a2.entries[static_cast<std::size_t>(v)].to_uint()] = BitString::from_uint(2, 2);
      } else {
        j0[v] = static_cast<std::uint64_t>(v);
        b1.entries[0] = BitString::from_uint(0, 2);
        b1.entries[1] = BitString::from_uint(1, 2);
        a2.entries[0] = BitString::from_uint(0, 3);
        a2.entries[1] = BitString::from_uint(1, 3);
        b3.entries[0] = BitString::from_uint(0, 2);
        b3.entries[1] = BitString::from_uint(1, 2);
        a4.entries[0] = BitString::from_uint(target, 3);
        a4.entries[1] = BitString::from_uint(target, 3);
      }
      alice[v] = {a2, a4};
      bob[v] = {b1, b3};
    }
  }

  std::uint64_t output(int v) const {
    return gind_plain(shape, j0[v], {bob[v][0], alice[v][0], bob[v][1], alice[v][1]}).to_uint();
  }
};

ViewSampler gind_sampler(Role observer, bool leak) {
  auto sc = std::make_shared<GIndScenario>(observer);
  if (sc->output(0) != sc->output(1)) throw ProtocolError("privacy scenario variants disagree on the output");
  return [sc, observer, leak](std::uint64_t seed, int v) {
    GIndOptions opts{leak};
    auto r = run_session(
        view_config(seed),
        [&](Party& a) {
          return gind_alice(a, sc->shape, sc->shape.in_domain(1).encode(sc->j0[v]), sc->alice[v], opts);
        },
        [&](Party& b) { return gind_bob(b, sc->shape, sc->shape.in_domain(1).zero(), sc->bob[v], opts); });
    return pick(r, observer);
  };
}

ViewSampler lut_sampler(Role observer) {
  auto rng = SeededRng::from_u64(91);
  std::vector<IndexedList> tables;
  for (int i = 0; i < 4; ++i) {
    std::vector<std::uint64_t> e;
    for (int j = 0; j < 8; ++j) e.push_back(rng.uniform_below(16));
    tables.push_back(IndexedList::from_uints(e, 4));
  }
  return [tables, observer](std::uint64_t seed, int v) {
    auto own_j = BitString::from_uint(3, 3);
    auto var_j = BitString::from_uint(v == 0 ? 1 : 6, 3);
    const auto& own_t = tables[0];
    const auto& var_t = tables[static_cast<std::size_t>(1 + v)];
    bool alice_fixed = observer == Role::Alice;
    auto r = run_session(
        view_config(seed),
        [&](Party& a) { return alice_fixed ? lut_eval_alice(a, own_j, own_t) : lut_eval_alice(a, var_j, var_t); },
        [&](Party& b) { return alice_fixed ? lut_eval_bob(b, var_j, var_t) : lut_eval_bob(b, own_j, own_t); });
    return pick(r, observer);
  };
}

// Alice observes with x = 00 against y in {01, 10} (both at distance 1);
// Bob, who learns nothing, observes with y = 01 against x in {0, 1} of the
// one-bit protocol.
ViewSampler garbled_sampler(Role observer) {
  std::size_t n = observer == Role::Alice ? 2 : 1;
  auto tree = build_hamming_tree(n);
  NextMessageCircuit alice[2], bob[2];
  for (int v = 0; v < 2; ++v) {
    if (observer == Role::Alice) {
      alice[v] = tree_alice_circuit(tree, BitString::from_bits("00"));
      bob[v] = tree_bob_circuit(tree, BitString::from_bits(v == 0 ? "01" : "10"));
    } else {
      alice[v] = tree_alice_circuit(tree, BitString::from_uint(static_cast<std::uint64_t>(v), 1));
      bob[v] = tree_bob_circuit(tree, BitString::from_bits("1"));
    }
  }
  return [=](std::uint64_t seed, int v) {
    auto a_shape = alice[v].public_shape(), b_shape = bob[v].public_shape();
    auto r = run_session(
        view_config(seed), [&](Party& p) { return garbled_alice(p, alice[v], b_shape); },
        [&](Party& p) { return garbled_bob(p, bob[v], a_shape); });
    return pick(r, observer);
  };
}

ViewSampler scenario_sampler(const std::string& scenario, Role observer) {
  if (scenario == "gind") return gind_sampler(observer, false);
  if (scenario == "gind-leaky") return gind_sampler(observer, true);
  if (scenario == "lut") return lut_sampler(observer);
  if (scenario == "garbled") return garbled_sampler(observer);
  throw UsageError("unknown privacy scenario '" + scenario + "'");
}

}  // namespace

std::vector<std::string> privacy_scenarios() { return {"gind", "gind-leaky", "lut", "garbled"}; }

std::vector<PrivacyReport> privacy_smoke(const std::string& scenario, std::size_t trials, std::uint64_t seed) {
  std::vector<PrivacyReport> out;
  for (Role r : {Role::Alice, Role::Bob}) out.push_back(privacy_check(scenario, r, scenario_sampler(scenario, r), trials, seed));
  return out;
}

}  // namespace sfe
