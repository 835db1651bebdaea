#include <doctest.h>

#include <cmath>

#include "sfe/bp_library.hpp"
#include "sfe/error.hpp"
#include "sfe/randomized.hpp"
#include "test_util.hpp"

using namespace sfe;

TEST_CASE("string equality program") {
  auto bp = bp_string_equality(4);
  CHECK(bp.depth() == 8);
  CHECK(bp.width() == 3);
  CHECK(run_plaintext_bp(bp, BitString::from_bits("1101"), BitString::from_bits("1010")) == 0);
  CHECK(run_plaintext_bp(bp, BitString::from_bits("1101"), BitString::from_bits("1101")) == 1);
  auto b3 = bp_string_equality(3);
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t y = 0; y < 8; ++y)
      CHECK(run_plaintext_bp(b3, BitString::from_uint(x, 3), BitString::from_uint(y, 3)) == (x == y ? 1u : 0u));
}

TEST_CASE("compiled equality matches plaintext and census") {
  auto bp = bp_string_equality(3);
  SessionConfig cfg;
  for (std::uint64_t x = 0; x < 8; x += 3)
    for (std::uint64_t y = 0; y < 8; ++y) {
      cfg.seed = x * 8 + y;
      auto r = compile_and_run_bp(cfg, bp, BitString::from_uint(x, 3), BitString::from_uint(y, 3));
      CHECK(r.value == (x == y ? 1u : 0u));
      std::vector<std::uint64_t> census(bp.layer_sizes.begin() + 1, bp.layer_sizes.end());
      CHECK(r.meter.ot_width_log == census);
    }
}

TEST_CASE("bp text round trip") {
  auto t = bp_string_equality_table(2);
  auto text = write_bp_table(t);
  CHECK(text ==
        "bp 4 1\nsizes 1 2 2 3 2\nlayer 0\n0 0 1\nlayer 1\n0 0 1\n0 1 0\nlayer 2\n1 0 1\n- 2 2\n"
        "layer 3\n1 0 1\n1 1 0\n- 1 1\nleaves 1 0\n");
  auto back = read_bp_table(text);
  CHECK(write_bp_table(back) == text);
  auto bp = back.to_program();
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y)
      CHECK(run_plaintext_bp(bp, BitString::from_uint(x, 2), BitString::from_uint(y, 2)) == (x == y ? 1u : 0u));
  CHECK_THROWS_AS(read_bp_table("bp 2 1\nsizes 1 2\n"), ProtocolError);
  CHECK_THROWS_AS(read_bp_table("bp 2 1\nsizes 1 1 1\nlayer 0\n0 0 5\nlayer 1\n- 0 0\nleaves 1\n"), ProtocolError);
}

TEST_CASE("dfa programs") {
  Dfa one;
  one.states = 1;
  one.delta = {{0, 0}};
  auto p1 = bp_dfa_accept(one, 3);
  CHECK(run_plaintext_bp(p1.bp, p1.alice_input, BitString::from_bits("101")) == 1);

  Dfa parity;
  parity.states = 2;
  parity.delta = {{0, 1}, {1, 0}};
  auto pp = bp_dfa_accept(parity, 4);
  CHECK(pp.bp.width() == 4);
  CHECK(pp.bp.depth() == 10);
  for (std::uint64_t a = 0; a < 16; ++a) {
    auto alpha = BitString::from_uint(a, 4);
    CHECK(run_plaintext_bp(pp.bp, pp.alice_input, alpha) == (alpha.popcount() % 2 == 0 ? 1u : 0u));
  }

  auto rng = SeededRng::from_u64(11);
  for (int trial = 0; trial < 20; ++trial) {
    Dfa d;
    d.states = 4;
    d.start = rng.uniform_below(4);
    d.accept = rng.uniform_below(4);
    for (int q = 0; q < 4; ++q) d.delta.push_back({rng.uniform_below(4), rng.uniform_below(4)});
    auto p = bp_dfa_accept(d, 5);
    for (std::uint64_t a = 0; a < 32; ++a) {
      auto alpha = BitString::from_uint(a, 5);
      CHECK(run_plaintext_bp(p.bp, p.alice_input, alpha) == (d.accepts(alpha) ? 1u : 0u));
    }
  }
  SessionConfig cfg;
  auto r = compile_and_run_bp(cfg, pp.bp, pp.alice_input, BitString::from_bits("0110"));
  CHECK(r.value == 1);
}

TEST_CASE("millionaires") {
  auto seed = BitString::from_uint(0x1234, 128);
  CHECK(millionaires_steps(16) == 4);
  CHECK(millionaires_hash_bits(16, std::pow(2.0, -20)) == 22);
  auto bp = bp_millionaires(8, 1e-3, seed);
  CHECK(run_plaintext_bp(bp, BitString::from_uint(5, 8), BitString::from_uint(3, 8)) ==
        static_cast<std::uint64_t>(Comparison::XLarger));
  CHECK(run_plaintext_bp(bp, BitString::from_uint(77, 8), BitString::from_uint(77, 8)) ==
        static_cast<std::uint64_t>(Comparison::Equal));
  auto big = bp_millionaires(16, std::pow(2.0, -20), seed);
  CHECK(big.depth() == 2 * 22 * 4 + 2);
  auto rng = SeededRng::from_u64(3);
  for (int i = 0; i < 200; ++i) {
    auto x = rng.bits(16), y = rng.bits(16);
    if (i % 5 == 0) y = x;
    CHECK(run_plaintext_bp(big, x, y) == static_cast<std::uint64_t>(compare_oracle(x, y)));
  }
  auto fd = bp_first_diff(16, std::pow(2.0, -20), seed);
  for (int i = 0; i < 100; ++i) {
    auto x = rng.bits(16), y = rng.bits(16);
    CHECK(run_plaintext_bp(fd, x, y) == first_diff_oracle(x, y));
  }
  SessionConfig cfg;
  auto r = compile_and_run_bp(cfg, bp, BitString::from_uint(5, 8), BitString::from_uint(3, 8));
  CHECK(r.value == static_cast<std::uint64_t>(Comparison::XLarger));
}

TEST_CASE("positionwise inequality") {
  std::size_t n = 4, m = 64;
  int wrong = 0;
  auto rng = SeededRng::from_u64(8);
  for (int s = 0; s < 1000; ++s) {
    auto seed = rng.bits(128);
    auto x = rng.bits(n * n), y = rng.bits(n * n);
    if (s % 3 == 0)
      for (std::size_t i = 0; i < n; ++i) y.set(i * n + i, !x.get(i * n + i));
    auto bp = bp_positionwise_inequality(n, m, seed);
    if (run_plaintext_bp(bp, x, y) != (positionwise_oracle(x, y, n) ? 1u : 0u)) ++wrong;
  }
  CHECK(wrong == 0);
}

TEST_CASE("revealed randomness") {
  RandomizedBp rbp;
  rbp.coin_bits = 128;
  rbp.instantiate = [](const BitString& r) { return bp_millionaires(8, 1e-3, r); };
  SessionConfig cfg;
  auto r = derandomize_revealed(cfg, rbp, BitString::from_uint(9, 8), BitString::from_uint(200, 8));
  CHECK(r.value == static_cast<std::uint64_t>(Comparison::YLarger));
  CHECK(r.meter.seed_bits_sent == cfg.security.k);
}

TEST_CASE("reduced randomness") {
  auto base = inner_product_equality(3);
  auto rng = SeededRng::from_u64(1);
  auto sampled = reduce_randomness(base, 256, rng);
  CHECK(sampled.selector_bits() == 8);
  double d = max_statistical_distance(base, sampled, 3);
  CHECK(d < 0.15);
  auto dist = output_distribution(base, BitString::from_bits("101"), BitString::from_bits("100"));
  CHECK(dist[1] == doctest::Approx(0.5));
  CHECK(statistical_distance({{0, 1.0}}, {{1, 1.0}}) == doctest::Approx(1.0));
}
