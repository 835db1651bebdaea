#include "sfe/bitstring.hpp"

#include <bit>

#include "sfe/crypto.hpp"
#include "sfe/error.hpp"

namespace sfe {

BitString::BitString(std::size_t bit_len) : bytes_((bit_len + 7) / 8, 0), bit_len_(bit_len) {}

BitString BitString::from_uint(std::uint64_t value, std::size_t bit_len) {
  if (bit_len < 64 && (value >> bit_len) != 0)
    throw ProtocolError("value " + std::to_string(value) + " does not fit in " +
                        std::to_string(bit_len) + " bits");
  BitString out(bit_len);
  for (std::size_t i = 0; i < bit_len; ++i) {
    std::size_t shift = bit_len - 1 - i;
    if (shift < 64 && ((value >> shift) & 1U)) out.set(i, true);
  }
  return out;
}

BitString BitString::from_bits(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      out.set(i, true);
    else if (bits[i] != '0')
      throw UsageError("bit string may contain only '0' and '1'");
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_len) {
  if (bytes.size() < (bit_len + 7) / 8) throw ProtocolError("not enough bytes for bit string");
  BitString out(bit_len);
  std::copy_n(bytes.begin(), out.bytes_.size(), out.bytes_.begin());
  out.clear_padding();
  return out;
}

bool BitString::get(std::size_t i) const {
  if (i >= bit_len_) throw std::out_of_range("BitString::get");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1U;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= bit_len_) throw std::out_of_range("BitString::set");
  auto mask = static_cast<std::uint8_t>(1U << (7 - i % 8));
  if (value)
    bytes_[i / 8] |= mask;
  else
    bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
}

std::uint64_t BitString::to_uint() const {
  if (bit_len_ > 64) throw ProtocolError("bit string longer than 64 bits");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bit_len_; ++i) v = (v << 1) | static_cast<std::uint64_t>(get(i));
  return v;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bit_len_) throw std::out_of_range("BitString::slice");
  BitString out(len);
  for (std::size_t i = 0; i < len; ++i)
    if (get(pos + i)) out.set(i, true);
  return out;
}

BitString& BitString::append(const BitString& tail) {
  std::size_t old = bit_len_;
  bit_len_ += tail.bit_len_;
  bytes_.resize((bit_len_ + 7) / 8, 0);
  if (old % 8 == 0) {
    std::copy(tail.bytes_.begin(), tail.bytes_.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(old / 8));
  } else {
    for (std::size_t i = 0; i < tail.bit_len_; ++i)
      if (tail.get(i)) set(old + i, true);
  }
  return *this;
}

BitString BitString::concat(const BitString& tail) const {
  BitString out = *this;
  out.append(tail);
  return out;
}

BitString& BitString::operator^=(const BitString& rhs) {
  if (rhs.bit_len_ != bit_len_)
    throw ProtocolError("XOR of bit strings with different lengths (" + std::to_string(bit_len_) +
                        " vs " + std::to_string(rhs.bit_len_) + ")");
  for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= rhs.bytes_[i];
  return *this;
}

std::size_t BitString::popcount() const {
  std::size_t n = 0;
  for (auto b : bytes_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

bool BitString::is_zero() const {
  for (auto b : bytes_)
    if (b) return false;
  return true;
}

std::string BitString::to_string() const {
  std::string s(bit_len_, '0');
  for (std::size_t i = 0; i < bit_len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::vector<std::uint8_t> BitString::serialize() const {
  std::vector<std::uint8_t> out;
  serialize_into(out);
  return out;
}

void BitString::serialize_into(std::vector<std::uint8_t>& out) const {
  auto n = static_cast<std::uint32_t>(bit_len_);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  out.insert(out.end(), bytes_.begin(), bytes_.end());
}

BitString BitString::deserialize(std::span<const std::uint8_t> in, std::size_t* consumed) {
  if (in.size() < 4) throw ProtocolError("truncated bit string header");
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(in[static_cast<std::size_t>(i)]) << (8 * i);
  std::size_t payload = (static_cast<std::size_t>(n) + 7) / 8;
  if (in.size() < 4 + payload) throw ProtocolError("truncated bit string payload");
  BitString out = from_bytes(in.subspan(4, payload), n);
  if (consumed) *consumed = 4 + payload;
  return out;
}

void BitString::clear_padding() {
  if (bit_len_ % 8 != 0 && !bytes_.empty())
    bytes_.back() &= static_cast<std::uint8_t>(0xFFU << (8 - bit_len_ % 8));
}

BitString xor_reconstruct(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw ProtocolError("malformed shares: length mismatch");
  return a ^ b;
}

std::pair<XorShare, XorShare> share_secret(const BitString& secret, SeededRng& rng) {
  BitString mask = rng.bits(secret.size());
  return {XorShare{secret ^ mask, Role::Alice}, XorShare{mask, Role::Bob}};
}

std::size_t ceil_log2(std::uint64_t v) {
  if (v <= 1) return 0;
  return static_cast<std::size_t>(64 - std::countl_zero(v - 1));
}

bool is_power_of_two(std::uint64_t v) { return std::has_single_bit(v); }

std::uint64_t next_power_of_two(std::uint64_t v) { return v <= 1 ? 1 : std::bit_ceil(v); }

}  // namespace sfe
