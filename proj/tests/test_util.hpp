#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "sfe/bitstring.hpp"

namespace sfe::testing {

inline constexpr double kSigmas = 4.0;

// Every bit position of the samples is 1 with frequency within kSigmas
// standard deviations of 1/2.
inline bool per_bit_uniform(const std::vector<BitString>& samples) {
  if (samples.empty()) return false;
  std::size_t len = samples.front().size();
  double n = static_cast<double>(samples.size());
  double sd = std::sqrt(n * 0.25);
  for (std::size_t i = 0; i < len; ++i) {
    double ones = 0;
    for (const auto& s : samples) ones += s.get(i) ? 1 : 0;
    if (std::abs(ones - n / 2) > kSigmas * sd) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> all_below(std::uint64_t n) {
  std::vector<std::uint64_t> v(n);
  for (std::uint64_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace sfe::testing
