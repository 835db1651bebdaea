#include "sfe/crypto.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace sfe {

namespace {

std::array<std::uint8_t, 32> digest_key(std::string_view domain, const BitString& seed) {
  ensure_crypto_init();
  std::vector<std::uint8_t> buf(domain.begin(), domain.end());
  buf.push_back(0);
  seed.serialize_into(buf);
  std::array<std::uint8_t, 32> key{};
  crypto_generichash(key.data(), key.size(), buf.data(), buf.size(), nullptr, 0);
  return key;
}

void chacha_block(const std::array<std::uint8_t, 32>& key, std::uint64_t block, std::uint8_t* out,
                  std::size_t len) {
  // The IETF variant takes a 32-bit block counter; the high half goes in the nonce.
  std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  auto hi = static_cast<std::uint32_t>(block >> 32);
  for (int i = 0; i < 4; ++i) nonce[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(hi >> (8 * i));
  std::vector<std::uint8_t> zeros(len, 0);
  crypto_stream_chacha20_ietf_xor_ic(out, zeros.data(), len, nonce.data(),
                                     static_cast<std::uint32_t>(block), key.data());
}

}  // namespace

void ensure_crypto_init() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  });
}

BitString prg_expand(const BitString& seed, std::size_t out_len_bits) {
  auto key = digest_key("sfe.prg", seed);
  std::size_t nbytes = (out_len_bits + 7) / 8;
  std::vector<std::uint8_t> out(nbytes);
  for (std::size_t off = 0, block = 0; off < nbytes; off += 64, ++block)
    chacha_block(key, block, out.data() + off, std::min<std::size_t>(64, nbytes - off));
  return BitString::from_bytes(out, out_len_bits);
}

BitString prf_eval(const BitString& key, const BitString& input, std::size_t out_len_bits) {
  ensure_crypto_init();
  std::vector<std::uint8_t> prefix{'s', 'f', 'e', '.', 'p', 'r', 'f', 0};
  key.serialize_into(prefix);
  input.serialize_into(prefix);
  std::size_t nbytes = (out_len_bits + 7) / 8;
  std::vector<std::uint8_t> out(nbytes);
  std::array<std::uint8_t, 64> block{};
  for (std::uint32_t ctr = 0; ctr * 64U < nbytes; ++ctr) {
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, block.size());
    crypto_generichash_update(&st, prefix.data(), prefix.size());
    std::array<std::uint8_t, 4> c{static_cast<std::uint8_t>(ctr), static_cast<std::uint8_t>(ctr >> 8),
                                  static_cast<std::uint8_t>(ctr >> 16), static_cast<std::uint8_t>(ctr >> 24)};
    crypto_generichash_update(&st, c.data(), c.size());
    crypto_generichash_final(&st, block.data(), block.size());
    std::size_t off = ctr * 64U;
    std::copy_n(block.begin(), std::min<std::size_t>(64, nbytes - off), out.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return BitString::from_bytes(out, out_len_bits);
}

SeededRng::SeededRng(const BitString& seed, std::uint64_t counter)
    : key_(digest_key("sfe.rng", seed)), counter_(counter) {}

SeededRng SeededRng::from_u64(std::uint64_t seed) { return SeededRng(BitString::from_uint(seed, 64)); }

SeededRng SeededRng::derive(std::string_view label) const {
  BitString material = BitString::from_bytes(key_, 256);
  std::vector<std::uint8_t> lbl(label.begin(), label.end());
  material.append(BitString::from_bytes(lbl, lbl.size() * 8));
  return SeededRng(material);
}

void SeededRng::refill() {
  chacha_block(key_, counter_, block_.data(), block_.size());
  ++counter_;
  pos_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ == block_.size()) refill();
    b = block_[pos_++];
  }
}

std::uint64_t SeededRng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

bool SeededRng::next_bit() {
  std::array<std::uint8_t, 1> b{};
  fill(b);
  return b[0] & 1U;
}

BitString SeededRng::bits(std::size_t n) {
  std::vector<std::uint8_t> buf((n + 7) / 8);
  fill(buf);
  return BitString::from_bytes(buf, n);
}

std::uint64_t SeededRng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below(0)");
  if (bound == 1) return 0;
  // Rejection sampling keeps the result exactly uniform.
  std::uint64_t limit = max() - (max() % bound + 1) % bound;
  for (;;) {
    std::uint64_t v = next_u64();
    if (v <= limit) return v % bound;
  }
}

}  // namespace sfe
