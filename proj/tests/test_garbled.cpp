#include <doctest.h>

#include <set>

#include "sfe/error.hpp"
#include "sfe/garbled.hpp"

using namespace sfe;

namespace {

BitString label(const BitString& g) { return g.slice(0, g.size() - 1); }
bool colour(const BitString& g) { return g.get(g.size() - 1); }

}  // namespace

TEST_CASE("single gate garbling") {
  const std::size_t k = 128;
  for (std::uint8_t truth : {kGateAnd, kGateXor, kGateOr, std::uint8_t{0b0111}}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      NextMessageCircuit c;
      GWire a = c.add_hardwired(false), b = c.add_hardwired(false);
      GWire o = c.add_gate(truth, a, b);
      c.z = {o};
      auto rng = SeededRng::from_u64(seed);
      auto g = garble(c, rng, k);
      REQUIRE(g.tables.size() == 1);
      CHECK(g.tables[0].size() == 4 * (k + 1));
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          auto out = eval_garbled_gate(g.tables[0], g.wires[a].garbled(x), g.wires[b].garbled(y), 0, k);
          bool expect = c.gates[0].apply(x, y);
          CHECK(out == g.wires[o].garbled(expect));
          CHECK((colour(out) != g.wires[o].perm) == expect);
        }
      CHECK(g.wires[a].w0 != g.wires[a].w1);
    }
  }
}

TEST_CASE("not via xor with constant one") {
  NextMessageCircuit c;
  GWire one = c.add_hardwired(true), a = c.add_hardwired(false);
  GWire o = c.add_gate(kGateXor, a, one);
  auto rng = SeededRng::from_u64(3);
  auto g = garble(c, rng, 64);
  auto out0 = eval_garbled_gate(g.tables[0], g.wires[a].garbled(false), g.wires[one].garbled(true), 0, 64);
  auto out1 = eval_garbled_gate(g.tables[0], g.wires[a].garbled(true), g.wires[one].garbled(true), 0, 64);
  CHECK(label(out0) == g.wires[o].w1);
  CHECK(label(out1) == g.wires[o].w0);
}

TEST_CASE("translation table") {
  for (int pi_i = 0; pi_i < 2; ++pi_i)
    for (int pi_j = 0; pi_j < 2; ++pi_j)
      for (int m = 0; m < 2; ++m) {
        WireSecret j{BitString::from_uint(5, 8), BitString::from_uint(9, 8), pi_j != 0};
        bool c_i = (pi_i != 0) != (m != 0);
        auto t = translation_table(c_i, j);
        auto got = t[static_cast<std::size_t>(pi_i)];
        CHECK(got == j.garbled(m != 0));
        CHECK((colour(got) != j.perm) == (m != 0));
        if (pi_i == 0 && m == 0) CHECK(t[0] == j.garbled(false));
      }
}

TEST_CASE("garbled hamming protocol") {
  auto tree = build_hamming_tree(2);
  SessionConfig cfg;
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y) {
      auto bx = BitString::from_uint(x, 2), by = BitString::from_uint(y, 2);
      auto ac = tree_alice_circuit(tree, bx), bc = tree_bob_circuit(tree, by);
      CHECK(run_plain_circuits(ac, bc).to_uint() == run_plaintext(tree, bx, by));
      cfg.seed = x * 4 + y;
      auto r = run_garbled_protocol(cfg, ac, bc);
      CHECK(r.z.to_uint() == static_cast<std::uint64_t>(__builtin_popcountll(x ^ y)));
      CHECK(r.messages == 4);
      CHECK(r.meter.ot_by_width == std::map<std::uint64_t, std::uint64_t>{{2, 4}});
      CHECK(r.meter.prf_evals <= 10 * r.gates);
    }
}

TEST_CASE("constant protocol") {
  NextMessageCircuit a, b;
  GWire z = a.add_hardwired(true);
  a.z = {z};
  SessionConfig cfg;
  auto r = run_garbled_protocol(cfg, a, b);
  CHECK(r.z.to_uint() == 1);
  CHECK(r.gates == 0);
  CHECK(r.meter.ot_by_width.empty());

  NextMessageCircuit a2, b2;
  a2.msg_out = {a2.add_hardwired(true)};
  a2.msg_in = {a2.add_wire()};
  a2.z = {a2.msg_in[0]};
  b2.msg_in = {b2.add_wire()};
  b2.msg_out = {b2.add_hardwired(false)};
  auto r2 = run_garbled_protocol(cfg, a2, b2);
  CHECK(r2.z.to_uint() == 0);
  CHECK(r2.meter.ot_by_width.at(2) == 2);
}

TEST_CASE("schedule mismatch aborts") {
  auto tree = build_hamming_tree(2);
  auto ac = tree_alice_circuit(tree, BitString(2));
  NextMessageCircuit bad;
  SessionConfig cfg;
  CHECK_THROWS_AS(run_garbled_protocol(cfg, ac, bad), ProtocolError);
  CHECK_THROWS_AS(run_plain_circuits(ac, bad), ProtocolError);
}

TEST_CASE("fresh labels across seeds") {
  auto tree = build_hamming_tree(2);
  auto ac = tree_alice_circuit(tree, BitString::from_bits("01"));
  std::set<std::vector<std::uint8_t>> seen;
  int collisions = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto rng = SeededRng::from_u64(seed);
    auto g = garble(ac, rng, 128);
    for (const auto& w : g.wires)
      for (const auto* l : {&w.w0, &w.w1})
        if (!seen.insert(l->serialize()).second) ++collisions;
  }
  CHECK(collisions == 0);
}
