#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sfe/bitstring.hpp"

namespace sfe {

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

inline constexpr double kPrivacySigmas = 4.0;

struct PrivacyReport {
  std::string scenario;
  Role observer = Role::Alice;
  std::size_t trials = 0;
  std::size_t positions = 0;
  double max_z = 0;
  std::vector<std::size_t> offending;  // byte positions beyond kPrivacySigmas
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

// Observer's received bytes for one run: `variant` (0 or 1) picks the
// counterpart's input, `seed` the run's coins.
using ViewSampler = std::function<std::vector<std::uint8_t>(std::uint64_t seed, int variant)>;

// Half the trials use variant 0 and half variant 1, each with fresh seeds.
// Per byte position, a Welch z statistic compares the mean byte value of the
// two groups; any |z| above kPrivacySigmas fails the check.
PrivacyReport privacy_check(const std::string& scenario, Role observer, const ViewSampler& sampler, std::size_t trials,
                            std::uint64_t seed);

// Registered scenarios: gind, gind-leaky, lut, garbled.
std::vector<std::string> privacy_scenarios();
// Both observers of one scenario.
std::vector<PrivacyReport> privacy_smoke(const std::string& scenario, std::size_t trials, std::uint64_t seed = 1);

}  // namespace sfe
