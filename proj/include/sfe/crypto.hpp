#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "sfe/bitstring.hpp"

namespace sfe {

// k bits of security. Real backends want k >= 64; ideal/test runs accept any k >= 1.
struct SecurityParam {
  std::size_t k = 128;
};

// G : {0,1}^k -> {0,1}^out_len_bits. ChaCha20 keystream under a BLAKE2b digest
// of the seed.
BitString prg_expand(const BitString& seed, std::size_t out_len_bits);

// F_key(input), out_len_bits long. BLAKE2b in counter mode over a prefix-free
// encoding of (key, input, block counter).
BitString prf_eval(const BitString& key, const BitString& input, std::size_t out_len_bits);

// Deterministic random stream: identical (seed, counter) gives identical output.
// Every protocol coin is drawn from one of these so runs replay from a seed.
class SeededRng {
 public:
  explicit SeededRng(const BitString& seed, std::uint64_t counter = 0);
  static SeededRng from_u64(std::uint64_t seed);

  // Independent child stream, keyed by this stream's seed and a label.
  SeededRng derive(std::string_view label) const;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  bool next_bit();
  BitString bits(std::size_t n);
  std::uint64_t uniform_below(std::uint64_t bound);  // bound >= 1

  // Number of 64-byte keystream blocks consumed so far.
  std::uint64_t counter() const { return counter_; }

  // UniformRandomBitGenerator, so <algorithm> shuffles work.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::array<std::uint8_t, 64> block_{};
  std::size_t pos_ = 64;
  std::uint64_t counter_ = 0;
};

// libsodium must be initialised before any primitive is used; idempotent.
void ensure_crypto_init();

}  // namespace sfe
