#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfe {

enum class Role : std::uint8_t { Alice = 0, Bob = 1 };

constexpr Role other(Role r) { return r == Role::Alice ? Role::Bob : Role::Alice; }
constexpr const char* role_name(Role r) { return r == Role::Alice ? "A" : "B"; }

// Fixed-length bit vector. Bit 0 is the most significant bit of byte 0, so
// integers and tree paths read big-endian (bit 0 = high-order bit / first
// message on the path). Unused trailing bits of the last byte are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t bit_len);

  static BitString from_uint(std::uint64_t value, std::size_t bit_len);
  static BitString from_bits(std::string_view bits);  // "0110"
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t bit_len);

  std::size_t size() const { return bit_len_; }
  bool empty() const { return bit_len_ == 0; }
  std::size_t byte_len() const { return bytes_.size(); }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  bool operator[](std::size_t i) const { return get(i); }

  // Requires size() <= 64.
  std::uint64_t to_uint() const;

  std::span<const std::uint8_t> bytes() const { return bytes_; }

  BitString slice(std::size_t pos, std::size_t len) const;
  BitString& append(const BitString& tail);
  BitString concat(const BitString& tail) const;

  BitString& operator^=(const BitString& rhs);
  friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitString&, const BitString&) = default;

  std::size_t popcount() const;
  bool is_zero() const;
  std::string to_string() const;

  // 4-byte little-endian bit count, then ceil(bit_len / 8) payload bytes.
  std::vector<std::uint8_t> serialize() const;
  void serialize_into(std::vector<std::uint8_t>& out) const;
  static BitString deserialize(std::span<const std::uint8_t> in, std::size_t* consumed = nullptr);

 private:
  void clear_padding();

  std::vector<std::uint8_t> bytes_;
  std::size_t bit_len_ = 0;
};

// Reconstructs a XOR-shared value; throws ProtocolError on length mismatch.
BitString xor_reconstruct(const BitString& a, const BitString& b);

struct XorShare {
  BitString share;
  Role role = Role::Alice;
};

class SeededRng;

// Splits `secret` into (Alice share, Bob share) with a fresh uniform mask.
std::pair<XorShare, XorShare> share_secret(const BitString& secret, SeededRng& rng);

std::size_t ceil_log2(std::uint64_t v);  // ceil_log2(1) == 0
bool is_power_of_two(std::uint64_t v);
std::uint64_t next_power_of_two(std::uint64_t v);

}  // namespace sfe
