#pragma once

#include <array>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/party.hpp"

namespace sfe {

enum class OtKind { Ideal, Group, Ot12 };

const char* ot_kind_name(OtKind kind);
OtKind parse_ot_kind(const std::string& name);

// One side of a single OT_1^w. The sender supplies w values of equal length;
// the chooser supplies (w, element_len, j). Both sides must agree on w and
// element_len.
struct OtRequest {
  bool sender = false;
  std::size_t width = 0;
  std::size_t element_len = 0;
  std::vector<BitString> values;
  std::uint64_t choice = 0;

  static OtRequest send(std::vector<BitString> values);
  static OtRequest choose(std::size_t width, std::size_t element_len, std::uint64_t j);
  void validate() const;
};

// X = max(k, ceil(log2 w)).
std::size_t default_element_len(std::size_t width, std::size_t k);

class OtBackend {
 public:
  virtual ~OtBackend() = default;
  virtual OtKind kind() const = 0;
  // Executes the batch as concurrent OTs. Output i is the chooser's value for
  // request i, or empty when this endpoint is the sender of request i.
  virtual std::vector<BitString> run(Party& self, std::span<const OtRequest> batch) = 0;
};

// Trusted dealer shared by the two endpoints of an in-process run: the sender
// deposits its values under the OT's sequence number and the chooser is
// handed x[j] out of band.
class IdealOtDealer {
 public:
  void deposit(std::uint64_t seq, std::vector<BitString> values);
  BitString take(std::uint64_t seq, std::size_t width, std::size_t element_len, std::uint64_t j);
  void abort();

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<std::uint64_t, std::vector<BitString>> slots_;
  bool aborted_ = false;
};

std::unique_ptr<OtBackend> make_ideal_ot(std::shared_ptr<IdealOtDealer> dealer);
// Two-message OT over ristretto255.
std::unique_ptr<OtBackend> make_group_ot();
// OT_1^w from log2(w) concurrent OT_1^2 calls on the base backend. Widths that
// are not powers of two are padded with dummy slots.
std::unique_ptr<OtBackend> make_ot12_reduction(std::unique_ptr<OtBackend> base);

// Single-OT conveniences.
void ot_send(Party& self, std::vector<BitString> values);
BitString ot_choose(Party& self, std::size_t width, std::size_t element_len, std::uint64_t j);

inline constexpr std::size_t kOt12TagBits = 32;

// Reduction internals, exposed for the integrity-tag checks. key_pairs[t][b]
// is the key for bit value b of index bit t (big-endian over log2 w bits).
std::vector<BitString> ot12_encrypt_table(std::span<const BitString> values,
                                          std::span<const std::array<BitString, 2>> key_pairs);
// Decrypts slot `slot` with one key per index bit; nullopt when the
// integrity tag does not verify.
std::optional<BitString> ot12_decrypt_slot(const BitString& cipher, std::uint64_t slot,
                                           std::span<const BitString> keys, std::size_t element_len);

}  // namespace sfe
