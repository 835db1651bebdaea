#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/branching_program.hpp"

namespace sfe {

// String equality on w-bit inputs. Layers alternate Alice sending x_i and Bob
// comparing with y_i; the first disagreement moves into an absorbing trap.
// Cost 2w, width 3, leaf 1 iff x = y.
BpTable bp_string_equality_table(std::size_t w);
BranchingProgram bp_string_equality(std::size_t w);

// Deterministic finite automaton over {0,1}.
struct Dfa {
  std::size_t states = 1;
  std::size_t start = 0;
  std::size_t accept = 0;
  std::vector<std::array<std::size_t, 2>> delta;

  void validate() const;
  std::size_t run(const BitString& alpha) const;
  bool accepts(const BitString& alpha) const { return run(alpha) == accept; }
};

BitString encode_dfa(const Dfa& dfa);

// Alice holds the automaton, Bob holds alpha of length c. Width 2|Q|, depth
// 2c + 2, leaf 1 iff alpha drives the automaton from start to accept.
struct DfaProgram {
  BranchingProgram bp;
  BitString alice_input;
};
DfaProgram bp_dfa_accept(const Dfa& dfa, std::size_t c);

enum class Comparison : std::uint64_t { Equal = 0, XLarger = 1, YLarger = 2 };
const char* comparison_name(Comparison c);
Comparison compare_oracle(const BitString& x, const BitString& y);
// Index of the first differing bit, or x.size() when x = y.
std::uint64_t first_diff_oracle(const BitString& x, const BitString& y);

// a = ceil(log2(ceil(log2 n) / eps)) digest bits per prefix test.
std::size_t millionaires_hash_bits(std::size_t n, double eps);
// ceil(log2 n) binary search steps over the first differing position.
std::size_t millionaires_steps(std::size_t n);
// h_i(prefix): a-bit PRF digest keyed per prefix length from the shared seed.
BitString prefix_digest(const BitString& seed, std::size_t i, const BitString& prefix, std::size_t a);

// Binary search for the first differing position, each step a prefix
// equality test on a-bit digests, then a comparison of that bit. Leaves
// carry Comparison values. Cost 2a ceil(log2 n) + 2.
BranchingProgram bp_millionaires(std::size_t n, double eps, const BitString& shared_seed);
// Same search; the leaf is the first differing index, or n when the final
// bits agree (promise x != y violated).
BranchingProgram bp_first_diff(std::size_t n, double eps, const BitString& shared_seed);

// Alice and Bob each hold n strings of n bits, concatenated. r_1..r_m come
// from the shared seed. Row i stays on <x_i,r_j> = <y_i,r_j> and advances
// otherwise; a mismatch on the last row enters a reject trap. Leaf 1 iff the
// trap was never entered.
BranchingProgram bp_positionwise_inequality(std::size_t n, std::size_t m, const BitString& shared_seed);
bool positionwise_oracle(const BitString& x, const BitString& y, std::size_t n);

}  // namespace sfe
