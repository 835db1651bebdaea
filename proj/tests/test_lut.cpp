#include <doctest.h>

#include <algorithm>

#include "sfe/error.hpp"
#include "sfe/lut.hpp"
#include "sfe/lut_sort.hpp"
#include "test_util.hpp"

using namespace sfe;

namespace {

IndexedList random_table(SeededRng& rng, std::size_t w, std::size_t m) {
  IndexedList t;
  t.element_len = m;
  for (std::size_t i = 0; i < w; ++i) t.entries.push_back(rng.bits(m));
  return t;
}

}  // namespace

TEST_CASE("lut_eval exhaustive small") {
  auto rng = SeededRng::from_u64(21);
  SessionConfig cfg;
  for (std::size_t w : {2, 4, 8}) {
    std::size_t m = w == 8 ? 8 : 3;
    auto ra = random_table(rng, w, m), rb = random_table(rng, w, m);
    for (std::uint64_t ja = 0; ja < w; ++ja)
      for (std::uint64_t jb = 0; jb < w; ++jb) {
        auto bja = BitString::from_uint(ja, ceil_log2(w)), bjb = BitString::from_uint(jb, ceil_log2(w));
        cfg.seed = ja * 8 + jb;
        auto r = run_session(
            cfg, [&](Party& a) { return lut_eval_alice(a, bja, ra); },
            [&](Party& b) { return lut_eval_bob(b, bjb, rb); });
        CHECK((r.alice ^ r.bob) == lut_plain(bja, ra, bjb, rb));
        CHECK((r.alice ^ r.bob) == (ra.entries[ja ^ jb] ^ rb.entries[ja ^ jb]));
        CHECK(r.meter.ot_by_width.at(w) == 2);
        CHECK(r.meter.ot_batches == 1);
      }
  }
}

TEST_CASE("lut_eval errors") {
  IndexedList t = IndexedList::from_uints({1, 2, 3}, 2);
  CHECK_THROWS_AS(lut_plain(BitString(2), t, BitString(2), t), ProtocolError);
}

TEST_CASE("and gate and two-gate circuit") {
  LutCircuit c;
  WireId a = c.add_wire(), b = c.add_wire(), cc = c.add_wire();
  c.alice_inputs = {a, cc};
  c.bob_inputs = {b};
  WireId t = c.add_wire(), o = c.add_wire();
  c.add_gate(boolean_gate(a, b, t, false, false, false, true));
  c.add_gate(boolean_gate(t, cc, o, false, true, true, false));
  c.outputs = {t, o};
  SessionConfig cfg;
  for (int x = 0; x < 8; ++x) {
    bool va = x & 4, vb = x & 2, vc = x & 1;
    BitString ain(2), bin(1);
    ain.set(0, va);
    ain.set(1, vc);
    bin.set(0, vb);
    auto plain = eval_lut_plain(c, ain, bin);
    CHECK(plain.get(0) == (va && vb));
    CHECK(plain.get(1) == ((va && vb) != vc));
    cfg.seed = static_cast<std::uint64_t>(x);
    auto r = run_lut_circuit(cfg, c, ain, bin);
    CHECK(r.value == plain);
    CHECK(r.meter.ot_by_width == c.ot_census());
    CHECK(r.meter.ot_by_width.at(4) == 4);
  }
  auto text = write_lut_circuit(c);
  CHECK(text == "lut 5\nalice 0 2\nbob 1\noutput 3 4\ngate 4 1 idx 0 1 out 3 public 0 0 0 1\n"
                "gate 4 1 idx 3 2 out 4 public 0 1 1 0\n");
  CHECK(write_lut_circuit(read_lut_circuit(text)) == text);
}

TEST_CASE("circuit validation") {
  CHECK_THROWS_AS(read_lut_circuit("lut 2\nalice 0\noutput 1\ngate 2 1 idx 1 out 1 public 0 1\n"), ProtocolError);
  CHECK_THROWS_AS(read_lut_circuit("lut 3\nalice 0\noutput 2\ngate 2 1 idx 0 out 2 public 0 1\ngate 2 1 idx 0 out 2 public 1 0\n"),
                  ProtocolError);
  CHECK_THROWS_AS(read_lut_circuit("lut 2\nalice 0\noutput 1\ngate 3 1 idx 0 out 1 public 0 1 1\n"), ProtocolError);
  auto c = read_lut_circuit("lut 3\nalice 0\nbob 1\noutput 2\ngate 2 1 idx 0 out 2 bob\n");
  CHECK(eval_lut_plain(c, BitString::from_bits("1"), BitString::from_bits("0"), {}, {{0, {0, 1}}}).to_uint() == 1);
  CHECK_THROWS_AS(eval_lut_plain(c, BitString::from_bits("1"), BitString::from_bits("0")), ProtocolError);
}

TEST_CASE("private and wire tables") {
  LutCircuit c;
  auto j = c.add_wires(2);
  c.alice_inputs = j;
  auto tw = c.add_wires(8);
  c.bob_inputs = tw;
  LutGate g;
  g.width = 4;
  g.entry_bits = 2;
  g.index = j;
  g.source = TableSource::Wires;
  g.table_wires = tw;
  auto o1 = c.add_gate(g);
  LutGate h;
  h.width = 4;
  h.entry_bits = 2;
  h.index = o1;
  h.source = TableSource::Alice;
  auto o2 = c.add_gate(h);
  c.outputs = o2;
  PrivateTables at{{1, {3, 2, 1, 0}}};
  SessionConfig cfg;
  for (std::uint64_t x = 0; x < 4; ++x) {
    auto bob_tab = pack_values({1, 2, 3, 0}, 2);
    auto plain = eval_lut_plain(c, BitString::from_uint(x, 2), bob_tab, at);
    std::uint64_t expect = 3 - ((x + 1) % 4);
    CHECK(plain.to_uint() == expect);
    cfg.seed = x;
    CHECK(run_lut_circuit(cfg, c, BitString::from_uint(x, 2), bob_tab, at).value.to_uint() == expect);
  }
}

TEST_CASE("merger") {
  CHECK(lut_merge({1, 3}, {2, 4}, 4) == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(lut_merge({1, 2}, {5, 6}, 4) == std::vector<std::uint64_t>{1, 2, 5, 6});
  CHECK(lut_merge({5, 6}, {1, 2}, 4) == std::vector<std::uint64_t>{1, 2, 5, 6});
  CHECK(lut_merge({3, 3}, {3, 7}, 4) == std::vector<std::uint64_t>{3, 3, 3, 7});
  CHECK(merge_reference({2}, {2}) == std::vector<std::uint64_t>{2, 2});
  CHECK_THROWS_AS(lut_merge({3, 1}, {2, 0}, 4), ProtocolError);
  auto rng = SeededRng::from_u64(4);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::uint64_t> a, b;
    for (int i = 0; i < 4; ++i) {
      a.push_back(rng.uniform_below(16));
      b.push_back(rng.uniform_below(16));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(lut_merge(a, b, 4) == merge_reference(a, b));
  }
}

TEST_CASE("merge sort") {
  CHECK(lut_merge_sort({9}, 4) == std::vector<std::uint64_t>{9});
  CHECK(lut_merge_sort({3, 1, 2, 4}, 4) == std::vector<std::uint64_t>{1, 2, 3, 4});
  auto rng = SeededRng::from_u64(6);
  auto s64 = build_sort_circuit(64, 8);
  CHECK(s64.gadgets == 64 * 6);
  CHECK(s64.circuit.gates.size() == s64.gadgets * merge_gadget_gates(8));
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint64_t> v;
    for (int i = 0; i < 64; ++i) v.push_back(rng.uniform_below(256));
    std::vector<std::uint64_t> a(v.begin(), v.begin() + 32), b(v.begin() + 32, v.end());
    auto out = unpack_values(eval_lut_plain(s64.circuit, pack_values(a, 8), pack_values(b, 8)), 8);
    auto ref = v;
    std::sort(ref.begin(), ref.end());
    CHECK(out == ref);
  }
  SessionConfig cfg;
  std::vector<std::uint64_t> v{7, 3, 3, 0, 15, 9, 1, 12};
  auto r = secure_merge_sort(cfg, v, 4);
  CHECK(r.sorted == std::vector<std::uint64_t>{0, 1, 3, 3, 7, 9, 12, 15});
  CHECK(r.gadgets == 24);
  auto census = build_sort_circuit(8, 4).circuit.ot_census();
  CHECK(r.meter.ot_by_width == census);
}
