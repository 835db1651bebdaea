#pragma once

#include <cstdint>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/cc_tree.hpp"
#include "sfe/session.hpp"

namespace sfe {

// Each party holds a multiset of m values from {1..n}; the output is the m-th
// smallest element of the union.
struct MedianParams {
  std::size_t m = 0;
  std::uint64_t n = 0;

  std::size_t value_bits() const { return ceil_log2(n); }
  void validate() const;
};

// Values are stored as v - 1 in value_bits() bits each.
BitString encode_multiset(const std::vector<std::uint64_t>& values, const MedianParams& p);

// Message schedule, two tree levels per exchange (Alice then Bob):
//   compare: Alice sends bit q of her lower median; Bob answers 1 iff his
//            lower median differs there. On agreement q advances. On a
//            difference with k >= 2 the party with the smaller median drops
//            its k/2 smallest elements, the other its k/2 largest, both clamp
//            to the agreed prefix and k halves; q stays. With k = 1 the
//            smaller element's owner is known and bit q is 0.
//   reveal:  the owner of the smaller element sends its remaining bits, the
//            other party sends 0.
// Padding exchanges after the result is fixed send 0. Depth 2(log2 m + B).
ProtocolTree build_median_tree(const MedianParams& p);

std::uint64_t median_oracle(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y);

enum class MedianMode { Plaintext, Compiled };

struct MedianResult {
  std::uint64_t value = 0;
  CostMeter meter;
};

MedianResult median_protocol(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y,
                             const MedianParams& p, MedianMode mode, const SessionConfig& cfg = {});

}  // namespace sfe
