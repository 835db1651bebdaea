#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/branching_program.hpp"
#include "sfe/crypto.hpp"
#include "sfe/session.hpp"

namespace sfe {

// A branching program family indexed by public coins r of coin_bits bits.
struct RandomizedBp {
  std::size_t coin_bits = 0;
  std::function<BranchingProgram(const BitString& r)> instantiate;
};

// Revealed random bits: Alice samples a k-bit seed s, sends it in a SEED
// frame, and both parties compile the program hard-wired to r = G(s).
BitString revealed_alice(Party& alice, const RandomizedBp& rbp, const BitString& x,
                         std::uint64_t budget = kDefaultListBudget);
BitString revealed_bob(Party& bob, const RandomizedBp& rbp, const BitString& y,
                       std::uint64_t budget = kDefaultListBudget);

CompiledRun derandomize_revealed(const SessionConfig& cfg, const RandomizedBp& rbp, const BitString& x,
                                 const BitString& y, std::uint64_t budget = kDefaultListBudget);

// The base randomized protocol with truly uniform coins, in the clear.
std::uint64_t run_randomized_plain(const RandomizedBp& rbp, const BitString& x, const BitString& y, SeededRng& coins);

// Protocol whose output is a function of the inputs and public coins.
struct PublicCoinProtocol {
  std::size_t coin_bits = 0;
  std::function<std::uint64_t(const BitString& x, const BitString& y, const BitString& r)> eval;
};

// Fixed sample r_1..r_t of coin strings; runs pick i uniformly.
struct SampledProtocol {
  PublicCoinProtocol base;
  std::vector<BitString> samples;

  std::size_t selector_bits() const { return ceil_log2(samples.size()); }
  std::uint64_t eval(const BitString& x, const BitString& y, std::size_t i) const;
  std::uint64_t run(const BitString& x, const BitString& y, SeededRng& rng) const;
};

SampledProtocol reduce_randomness(const PublicCoinProtocol& base, std::size_t t, SeededRng& rng);

using Distribution = std::map<std::uint64_t, double>;

// Exact, by enumerating all 2^coin_bits coin strings.
Distribution output_distribution(const PublicCoinProtocol& p, const BitString& x, const BitString& y);
// Exact, by enumerating the selector.
Distribution output_distribution(const SampledProtocol& p, const BitString& x, const BitString& y);
double statistical_distance(const Distribution& a, const Distribution& b);

// Largest statistical distance over all input pairs of n bits each.
double max_statistical_distance(const PublicCoinProtocol& base, const SampledProtocol& sampled, std::size_t n);

// Outputs [<x,r> = <y,r>] for n-bit inputs and n coin bits.
PublicCoinProtocol inner_product_equality(std::size_t n);

}  // namespace sfe
