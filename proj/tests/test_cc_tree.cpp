#include <doctest.h>

#include <algorithm>

#include "sfe/cc_tree.hpp"
#include "sfe/error.hpp"
#include "sfe/median.hpp"
#include "test_util.hpp"

using namespace sfe;

TEST_CASE("hamming tree plaintext") {
  auto t = build_hamming_tree(2);
  CHECK(t.depth == 4);
  CHECK(run_plaintext(t, BitString::from_bits("01"), BitString::from_bits("11")) == 1);
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y)
      CHECK(run_plaintext(t, BitString::from_uint(x, 2), BitString::from_uint(y, 2)) ==
            static_cast<std::uint64_t>(__builtin_popcountll(x ^ y)));
  auto t3 = build_hamming_tree(3);
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(run_plaintext(t3, BitString::from_uint(x, 3), BitString::from_uint(x, 3)) == 0);
    for (std::uint64_t y = 0; y < 8; ++y)
      CHECK(run_plaintext(t3, BitString::from_uint(x, 3), BitString::from_uint(y, 3)) ==
            static_cast<std::uint64_t>(__builtin_popcountll(x ^ y)));
  }
}

TEST_CASE("constant tree") {
  auto t = build_constant_tree(4, 5, 3);
  CHECK(run_plaintext(t, BitString(1), BitString(1)) == 5);
  auto l = induce_lists(t, BitString(1), Role::Alice);
  for (const auto& e : l.lists.back().entries) CHECK(e.to_uint() == 5);
}

TEST_CASE("induced lists of the worked example") {
  auto t = build_hamming_tree(2);
  auto a = induce_lists(t, BitString::from_bits("01"), Role::Alice);
  auto b = induce_lists(t, BitString::from_bits("11"), Role::Bob);
  CHECK(a.j == 0);
  CHECK(a.lists[0].to_uints() == std::vector<std::uint64_t>{1, 3, 5, 7});
  CHECK(b.lists[0].to_uints() == std::vector<std::uint64_t>{1, 2});
  CHECK(b.lists[1].to_uints() == std::vector<std::uint64_t>{1, 2, 5, 6, 9, 10, 13, 14});
  CHECK(a.lists[1].to_uints() == std::vector<std::uint64_t>{0, 1, 0, 1, 1, 2, 1, 2, 0, 1, 0, 1, 1, 2, 1, 2});
  std::string dump = dump_lists(a, b);
  CHECK(dump ==
        "j 0\ny1 1 2\nx2 1 3 5 7\ny3 1 2 5 6 9 10 13 14\nx4 0 1 0 1 1 2 1 2 0 1 0 1 1 2 1 2\n");
  auto parsed = parse_list_dump(dump);
  CHECK(parsed[0] == std::vector<std::uint64_t>{0});
  CHECK(parsed[3] == b.lists[1].to_uints());
}

TEST_CASE("list-shape law") {
  auto rng = SeededRng::from_u64(5);
  auto t = build_hamming_tree(4);
  for (Role role : {Role::Alice, Role::Bob}) {
    auto l = induce_lists(t, rng.bits(4), role);
    for (std::size_t i = 0; i < l.lists.size(); ++i) {
      std::size_t level = l.level_of(i);
      REQUIRE(l.lists[i].width() == (std::size_t{1} << level));
      if (level == t.depth) continue;
      for (std::uint64_t n = 0; n < l.lists[i].width(); ++n) {
        auto e = l.lists[i].entries[n].to_uint();
        CHECK((e == 2 * n || e == 2 * n + 1));
      }
    }
  }
}

TEST_CASE("compiled hamming protocol") {
  auto t = build_hamming_tree(2);
  SessionConfig cfg;
  auto r = compile_and_run_cc(cfg, t, BitString::from_bits("01"), BitString::from_bits("11"));
  CHECK(r.value == 1);
  CHECK(r.meter.ot_width_log == std::vector<std::uint64_t>{2, 4, 8, 16});
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y) {
      cfg.seed = x * 4 + y;
      auto bx = BitString::from_uint(x, 2), by = BitString::from_uint(y, 2);
      auto rr = compile_and_run_cc(cfg, t, bx, by);
      CHECK(rr.value == run_plaintext(t, bx, by));
      CHECK(rr.meter.ot_width_log == std::vector<std::uint64_t>{2, 4, 8, 16});
    }
}

TEST_CASE("compiled equals plaintext for c = 8") {
  auto t = build_hamming_tree(4);
  auto rng = SeededRng::from_u64(6);
  SessionConfig cfg;
  for (int i = 0; i < 30; ++i) {
    auto x = rng.bits(4), y = rng.bits(4);
    cfg.seed = i;
    CHECK(compile_and_run_cc(cfg, t, x, y).value == run_plaintext(t, x, y));
  }
}

TEST_CASE("budget refusal") {
  auto t = build_hamming_tree(4);
  CHECK_THROWS_AS(induce_lists(t, BitString(4), Role::Alice, 100), BudgetExceeded);
  try {
    check_tree_budget(build_hamming_tree(11));
    FAIL("expected refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find("2^23") != std::string::npos);
  }
}

TEST_CASE("median examples and oracle agreement") {
  MedianParams p4{4, 8};
  CHECK(median_protocol({1, 3, 5, 7}, {2, 4, 6, 8}, p4, MedianMode::Plaintext).value == 4);
  CHECK(median_protocol({1, 3, 5, 7}, {2, 4, 6, 8}, p4, MedianMode::Compiled).value == 4);
  MedianParams p2{2, 16};
  CHECK(median_protocol({5, 5}, {5, 5}, p2, MedianMode::Plaintext).value == 5);
  auto rng = SeededRng::from_u64(8);
  for (std::size_t m : {1u, 2u, 4u, 8u}) {
    MedianParams p{m, 16};
    for (int t = 0; t < 300; ++t) {
      std::vector<std::uint64_t> x, y;
      for (std::size_t i = 0; i < m; ++i) {
        x.push_back(1 + rng.uniform_below(16));
        y.push_back(1 + rng.uniform_below(16));
      }
      REQUIRE(median_protocol(x, y, p, MedianMode::Plaintext).value == median_oracle(x, y));
    }
  }
}

TEST_CASE("median compiled mode and input validation") {
  auto rng = SeededRng::from_u64(9);
  MedianParams p{2, 16};
  SessionConfig cfg;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::uint64_t> x{1 + rng.uniform_below(16), 1 + rng.uniform_below(16)};
    std::vector<std::uint64_t> y{1 + rng.uniform_below(16), 1 + rng.uniform_below(16)};
    cfg.seed = t;
    CHECK(median_protocol(x, y, p, MedianMode::Compiled, cfg).value == median_oracle(x, y));
  }
  CHECK_THROWS_AS(median_protocol({1, 2, 3}, {1, 2, 3}, MedianParams{3, 16}, MedianMode::Plaintext), ProtocolError);
  CHECK_THROWS_AS(median_protocol({0, 2}, {1, 2}, p, MedianMode::Plaintext), ProtocolError);
  CHECK_THROWS_AS(median_protocol({1, 17}, {1, 2}, p, MedianMode::Plaintext), ProtocolError);
}
