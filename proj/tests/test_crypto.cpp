#include <doctest.h>

#include <cmath>

#include "sfe/crypto.hpp"

using namespace sfe;

TEST_CASE("prg_expand is deterministic and length exact") {
  auto seed = BitString::from_bits("10110011101");
  for (std::size_t len : {1u, 7u, 128u, 1001u}) {
    auto a = prg_expand(seed, len);
    CHECK(a.size() == len);
    CHECK(a == prg_expand(seed, len));
  }
}

TEST_CASE("prg_expand distinct seeds give distinct outputs") {
  auto rng = SeededRng::from_u64(1);
  auto s1 = rng.bits(128), s2 = rng.bits(128);
  REQUIRE(s1 != s2);
  CHECK(prg_expand(s1, 256) != prg_expand(s2, 256));
}

TEST_CASE("prg_expand output passes a monobit test at 4 sigma") {
  auto out = prg_expand(SeededRng::from_u64(5).bits(128), 10000);
  double ones = static_cast<double>(out.popcount());
  CHECK(std::abs(ones - 5000.0) <= 4.0 * std::sqrt(10000 * 0.25));
}

TEST_CASE("prf_eval determinism and separation") {
  auto rng = SeededRng::from_u64(9);
  auto k1 = rng.bits(128), k2 = rng.bits(128);
  auto in0 = BitString::from_uint(0, 8), in1 = BitString::from_uint(1, 8);
  CHECK(prf_eval(k1, in0, 129) == prf_eval(k1, in0, 129));
  CHECK(prf_eval(k1, in0, 129).size() == 129);
  CHECK(prf_eval(k1, in0, 128) != prf_eval(k1, in1, 128));
  CHECK(prf_eval(k1, in0, 128) != prf_eval(k2, in0, 128));
  // Inputs differing only in length are distinct.
  CHECK(prf_eval(k1, BitString::from_bits("0"), 64) != prf_eval(k1, BitString::from_bits("00"), 64));
}

TEST_CASE("SeededRng replays from (seed, counter)") {
  auto a = SeededRng::from_u64(42), b = SeededRng::from_u64(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  auto c = SeededRng::from_u64(43);
  CHECK(SeededRng::from_u64(42).next_u64() != c.next_u64());
  CHECK(a.derive("x").next_u64() == b.derive("x").next_u64());
  CHECK(SeededRng::from_u64(42).derive("x").next_u64() != SeededRng::from_u64(42).derive("y").next_u64());
}

TEST_CASE("uniform_below stays in range and covers it") {
  auto rng = SeededRng::from_u64(2);
  std::vector<int> hits(6);
  for (int i = 0; i < 6000; ++i) {
    auto v = rng.uniform_below(6);
    REQUIRE(v < 6);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);
}
