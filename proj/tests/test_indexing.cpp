#include <doctest.h>

#include "sfe/error.hpp"
#include "sfe/indexing.hpp"
#include "sfe/session.hpp"
#include "test_util.hpp"

using namespace sfe;

namespace {

SessionConfig config(std::uint64_t seed = 1) {
  SessionConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// Alice holds J = pi ^ j, Bob holds (pi, y).
std::pair<BitString, BitString> run_ab(std::uint64_t seed, std::uint64_t pi, std::uint64_t j, const IndexedList& y) {
  std::size_t bits = ceil_log2(y.width());
  auto r = run_session(
      config(seed),
      [&](Party& a) { return ind_ab_alice(a, BitString::from_uint(pi ^ j, bits), y.width(), y.element_len); },
      [&](Party& b) { return ind_ab_bob(b, BitString::from_uint(pi, bits), y); });
  return {r.alice, r.bob};
}

}  // namespace

TEST_CASE("ind_ab with pi = 0") {
  auto [a, b] = run_ab(1, 0, 1, IndexedList::from_uints({3, 8}, 4));
  CHECK(xor_reconstruct(a, b).to_uint() == 8);
}

TEST_CASE("ind_ab exhaustive over (pi, j) at w = 4") {
  auto y = IndexedList::from_uints({9, 4, 13, 6}, 4);
  for (std::uint64_t pi = 0; pi < 4; ++pi)
    for (std::uint64_t j = 0; j < 4; ++j) {
      auto [a, b] = run_ab(pi * 4 + j, pi, j, y);
      CHECK(xor_reconstruct(a, b).to_uint() == y.entries[j].to_uint());
    }
}

TEST_CASE("ind_ab: Alice's output share is uniform over 1000 runs") {
  auto y = IndexedList::from_uints({9, 4, 13, 6}, 8);
  std::vector<BitString> shares;
  for (int t = 0; t < 1000; ++t) shares.push_back(run_ab(5000 + t, 2, 3, y).first);
  CHECK(testing::per_bit_uniform(shares));
}

TEST_CASE("ind_ba mirror: examples, exhaustive and census") {
  auto run = [](std::uint64_t pi, std::uint64_t j, const IndexedList& x) {
    std::size_t bits = ceil_log2(x.width());
    return run_session(
        config(pi + 7 * j), [&](Party& a) { return ind_ba_alice(a, BitString::from_uint(pi, bits), x); },
        [&](Party& b) { return ind_ba_bob(b, BitString::from_uint(pi ^ j, bits), x.width(), x.element_len); });
  };
  auto r0 = run(0, 0, IndexedList::from_uints({6, 2}, 3));
  CHECK(xor_reconstruct(r0.alice, r0.bob).to_uint() == 6);
  auto x = IndexedList::from_uints({1, 7, 3, 5}, 3);
  for (std::uint64_t pi = 0; pi < 4; ++pi)
    for (std::uint64_t j = 0; j < 4; ++j) {
      auto r = run(pi, j, x);
      CHECK(xor_reconstruct(r.alice, r.bob).to_uint() == x.entries[j].to_uint());
      CHECK(r.meter.ot_by_width == std::map<std::uint64_t, std::uint64_t>{{4, 1}});
    }
}

TEST_CASE("ind_ab rejects non power-of-two widths") {
  CHECK_THROWS_AS(run_ab(1, 0, 0, IndexedList::from_uints({1, 2, 3}, 4)), ProtocolError);
}

namespace {

std::uint64_t two_level(std::uint64_t seed, std::uint64_t j, const IndexedList& x, const IndexedList& y) {
  TwoLevelShape shape{y.width(), x.width(), x.element_len};
  return run_session(
             config(seed), [&](Party& a) { return ind_two_level_alice(a, shape, j, x); },
             [&](Party& b) { return ind_two_level_bob(b, shape, y); })
      .alice.to_uint();
}

}  // namespace

TEST_CASE("ind_two_level examples") {
  auto x = IndexedList::from_uints({10, 20, 30, 40}, 8);
  CHECK(two_level(1, 0, x, IndexedList::from_uints({2, 0, 3}, 2)) == 30);
  for (std::uint64_t j = 0; j < 4; ++j) CHECK(two_level(2, j, x, IndexedList::from_uints({0, 0, 0, 0}, 2)) == 10);
}

TEST_CASE("ind_two_level exhaustive at w_x = w_y = 4") {
  auto rng = SeededRng::from_u64(3);
  for (int inst = 0; inst < 10; ++inst) {
    std::vector<std::uint64_t> xs, ys;
    for (int i = 0; i < 4; ++i) {
      xs.push_back(rng.uniform_below(256));
      ys.push_back(rng.uniform_below(4));
    }
    auto x = IndexedList::from_uints(xs, 8), y = IndexedList::from_uints(ys, 2);
    for (std::uint64_t j = 0; j < 4; ++j) CHECK(two_level(inst * 4 + j, j, x, y) == xs[ys[j]]);
  }
}

TEST_CASE("ind_two_level detects out-of-range entries at setup") {
  auto x = IndexedList::from_uints({1, 2}, 4);
  CHECK_THROWS_AS(two_level(1, 0, x, IndexedList::from_uints({0, 3}, 2)), ProtocolError);
}

namespace {

struct GindOutcome {
  BitString a, b;
  CostMeter meter;
};

GindOutcome run_gind(std::uint64_t seed, const GIndShape& shape, std::uint64_t j0, std::uint64_t pi,
                     const std::vector<IndexedList>& levels, const GIndOptions& opts = {}) {
  std::vector<IndexedList> alice, bob;
  for (std::size_t i = 0; i < levels.size(); ++i) (i % 2 == 0 ? bob : alice).push_back(levels[i]);
  auto in = shape.in_domain(1);
  auto pib = in.encode(pi);
  auto ja = in.sub(in.encode(j0), pib);
  auto r = run_session(
      config(seed), [&](Party& a) { return gind_alice(a, shape, ja, alice, opts); },
      [&](Party& b) { return gind_bob(b, shape, pib, bob, opts); });
  return {r.alice, r.bob, r.meter};
}

std::vector<IndexedList> random_levels(SeededRng& rng, const GIndShape& shape) {
  std::vector<IndexedList> levels;
  for (std::size_t l = 1; l <= shape.levels(); ++l) {
    std::vector<std::uint64_t> v;
    std::uint64_t bound = l < shape.levels() ? shape.widths[l] : (std::uint64_t{1} << shape.leaf_bits);
    for (std::uint64_t i = 0; i < shape.widths[l - 1]; ++i) v.push_back(rng.uniform_below(bound));
    levels.push_back(IndexedList::from_uints(v, shape.out_domain(l).bits));
  }
  return levels;
}

}  // namespace

TEST_CASE("gind on the hamming instance reconstructs 1") {
  GIndShape shape{{2, 4, 8, 16}, 2};
  std::vector<IndexedList> levels{
      IndexedList::from_uints({1, 2}, 2), IndexedList::from_uints({1, 3, 5, 7}, 3),
      IndexedList::from_uints({1, 2, 5, 6, 9, 10, 13, 14}, 4),
      IndexedList::from_uints({0, 1, 0, 1, 1, 2, 1, 2, 0, 1, 0, 1, 1, 2, 1, 2}, 2)};
  for (std::uint64_t pi = 0; pi < 2; ++pi) {
    auto r = run_gind(pi + 1, shape, 0, pi, levels);
    CHECK(xor_reconstruct(r.a, r.b).to_uint() == 1);
    CHECK(r.meter.ot_width_log == shape.widths);
  }
}

TEST_CASE("gind with c = 2 agrees with ind_two_level in share form") {
  auto x = IndexedList::from_uints({10, 20, 30, 40}, 8);
  auto y = IndexedList::from_uints({2, 0, 3, 1}, 2);
  GIndShape shape{{4, 4}, 8};
  for (std::uint64_t j = 0; j < 4; ++j) {
    auto r = run_gind(j, shape, j, 0, {y, x});
    TwoLevelShape tl{4, 4, 8};
    auto s = run_session(
        config(j), [&](Party& a) { return ind_two_level_alice(a, tl, j, x, false); },
        [&](Party& b) { return ind_two_level_bob(b, tl, y, false); });
    CHECK(xor_reconstruct(r.a, r.b) == xor_reconstruct(s.alice, s.bob));
  }
}

TEST_CASE("gind matches the pointer-jumping oracle on 100 random instances") {
  auto rng = SeededRng::from_u64(77);
  GIndShape shape{{2, 4, 8, 16}, 6};
  for (int t = 0; t < 100; ++t) {
    auto levels = random_levels(rng, shape);
    std::uint64_t j0 = rng.uniform_below(2), pi = rng.uniform_below(2);
    auto r = run_gind(t, shape, j0, pi, levels);
    REQUIRE(xor_reconstruct(r.a, r.b) == gind_plain(shape, j0, levels));
    REQUIRE(r.meter.ot_width_log == shape.widths);
  }
}

TEST_CASE("gind exhaustive at widths <= 4, c <= 4") {
  auto rng = SeededRng::from_u64(78);
  for (const auto& widths : std::vector<std::vector<std::uint64_t>>{{2, 2}, {4, 4}, {2, 4, 4, 2}, {4, 4, 4, 4}}) {
    GIndShape shape{widths, 3};
    for (int inst = 0; inst < 3; ++inst) {
      auto levels = random_levels(rng, shape);
      for (std::uint64_t j0 = 0; j0 < widths[0]; ++j0)
        for (std::uint64_t pi = 0; pi < widths[0]; ++pi) {
          auto r = run_gind(j0 * 8 + pi, shape, j0, pi, levels);
          REQUIRE(xor_reconstruct(r.a, r.b) == gind_plain(shape, j0, levels));
        }
    }
  }
}

TEST_CASE("gind handles widths that are not powers of two") {
  auto rng = SeededRng::from_u64(79);
  GIndShape shape{{3, 5, 6, 3}, 4};
  for (int t = 0; t < 50; ++t) {
    auto levels = random_levels(rng, shape);
    std::uint64_t j0 = rng.uniform_below(3), pi = rng.uniform_below(3);
    auto r = run_gind(t, shape, j0, pi, levels);
    REQUIRE(xor_reconstruct(r.a, r.b) == gind_plain(shape, j0, levels));
    REQUIRE(r.meter.ot_width_log == shape.widths);
  }
}

TEST_CASE("gind output shares are fresh and uniform") {
  auto rng = SeededRng::from_u64(80);
  GIndShape shape{{2, 4, 8, 16}, 8};
  auto levels = random_levels(rng, shape);
  std::vector<BitString> sa, sb;
  for (int t = 0; t < 1000; ++t) {
    auto r = run_gind(9000 + t, shape, 1, 0, levels);
    sa.push_back(r.a);
    sb.push_back(r.b);
  }
  CHECK(testing::per_bit_uniform(sa));
  CHECK(testing::per_bit_uniform(sb));
}

TEST_CASE("gind setup errors") {
  GIndShape shape{{2, 4}, 4};
  auto y = IndexedList::from_uints({1, 3}, 2);
  CHECK_THROWS_AS(run_gind(1, shape, 0, 0, {y, IndexedList::from_uints({1, 2, 3}, 4)}), ProtocolError);
  CHECK_THROWS_AS(run_gind(1, GIndShape{{2, 4, 4}, 4}, 0, 0, {y, y, y}), ProtocolError);
}
