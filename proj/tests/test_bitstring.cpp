#include <doctest.h>

#include "sfe/bitstring.hpp"
#include "sfe/crypto.hpp"
#include "sfe/error.hpp"
#include "test_util.hpp"

using namespace sfe;

TEST_CASE("xor_reconstruct examples") {
  CHECK(xor_reconstruct(BitString::from_bits("1010"), BitString::from_bits("0110")) == BitString::from_bits("1100"));
  auto s = BitString::from_bits("110010111");
  CHECK(xor_reconstruct(s, s).is_zero());
  CHECK(xor_reconstruct(s, BitString(9)) == s);
  CHECK_THROWS_AS(xor_reconstruct(BitString(3), BitString(4)), ProtocolError);
}

TEST_CASE("xor_reconstruct is self-inverse, exhaustive up to 8 bits") {
  for (std::size_t len = 1; len <= 8; ++len)
    for (std::uint64_t a = 0; a < (1u << len); ++a)
      for (std::uint64_t b = 0; b < (1u << len); ++b) {
        auto x = BitString::from_uint(a, len), y = BitString::from_uint(b, len);
        REQUIRE(xor_reconstruct(xor_reconstruct(x, y), y) == x);
        REQUIRE(xor_reconstruct(x, y).to_uint() == (a ^ b));
      }
}

TEST_CASE("xor_reconstruct randomized above 8 bits") {
  auto rng = SeededRng::from_u64(7);
  for (int t = 0; t < 200; ++t) {
    std::size_t len = 9 + rng.uniform_below(300);
    auto a = rng.bits(len), b = rng.bits(len);
    CHECK(xor_reconstruct(xor_reconstruct(a, b), b) == a);
  }
}

TEST_CASE("bit order is big-endian") {
  auto b = BitString::from_uint(0b1011, 4);
  CHECK(b.to_string() == "1011");
  CHECK(b.get(0));
  CHECK_FALSE(b.get(1));
  CHECK(b.bytes()[0] == 0xB0);
}

TEST_CASE("serialization round trip and padding") {
  auto rng = SeededRng::from_u64(3);
  for (std::size_t len : {0u, 1u, 7u, 8u, 9u, 63u, 64u, 65u, 1000u}) {
    auto b = rng.bits(len);
    auto bytes = b.serialize();
    REQUIRE(bytes.size() == 4 + (len + 7) / 8);
    CHECK(bytes[0] == (len & 0xFF));
    CHECK(bytes[1] == ((len >> 8) & 0xFF));
    std::size_t used = 0;
    CHECK(BitString::deserialize(bytes, &used) == b);
    CHECK(used == bytes.size());
    if (len % 8 != 0) CHECK((bytes.back() & ((1u << (8 - len % 8)) - 1)) == 0);
  }
}

TEST_CASE("slice, append and popcount") {
  auto b = BitString::from_bits("1100101");
  CHECK(b.slice(2, 3).to_string() == "001");
  CHECK(b.concat(BitString::from_bits("11")).to_string() == "110010111");
  CHECK(b.popcount() == 4);
}

TEST_CASE("share_secret marginal of Alice's share is uniform") {
  auto rng = SeededRng::from_u64(11);
  auto secret = BitString::from_bits("1111000010100101");
  std::vector<BitString> shares;
  for (int t = 0; t < 10000; ++t) {
    auto [a, b] = share_secret(secret, rng);
    REQUIRE(xor_reconstruct(a.share, b.share) == secret);
    CHECK(a.role == Role::Alice);
    shares.push_back(a.share);
  }
  CHECK(testing::per_bit_uniform(shares));
}

TEST_CASE("integer helpers") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(16) == 4);
  CHECK(ceil_log2(17) == 5);
  CHECK(is_power_of_two(8));
  CHECK_FALSE(is_power_of_two(6));
  CHECK(next_power_of_two(5) == 8);
  CHECK(next_power_of_two(8) == 8);
}
