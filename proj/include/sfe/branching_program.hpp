#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/cc_tree.hpp"
#include "sfe/indexing.hpp"
#include "sfe/party.hpp"
#include "sfe/session.hpp"

namespace sfe {

// Layered program L_0..L_c with |L_0| = 1. From node v of layer l the walk
// moves to next(l, v, input) in layer l+1, where input is Alice's x for even
// l and Bob's y for odd l. Nodes of L_c carry leaf values.
struct BranchingProgram {
  std::vector<std::uint64_t> layer_sizes;
  std::function<std::uint64_t(std::size_t layer, std::uint64_t node, const BitString& input)> next;
  std::vector<std::uint64_t> leaves;
  std::size_t leaf_bits = 0;

  std::size_t depth() const { return layer_sizes.empty() ? 0 : layer_sizes.size() - 1; }
  std::uint64_t width() const;
  std::uint64_t total_nodes() const;
  void validate() const;
};

std::uint64_t run_plaintext_bp(const BranchingProgram& bp, const BitString& x, const BitString& y);

// Sequence of nodes visited, L_0..L_c.
std::vector<std::uint64_t> bp_walk(const BranchingProgram& bp, const BitString& x, const BitString& y);

// GInd shape of the compiled program: widths |L_1|..|L_c|.
GIndShape bp_shape(const BranchingProgram& bp);

void check_bp_budget(const BranchingProgram& bp, std::uint64_t budget = kDefaultListBudget);
InducedLists induce_bp_lists(const BranchingProgram& bp, const BitString& input, Role role,
                             std::uint64_t budget = kDefaultListBudget);

BitString bp_alice(Party& alice, const BranchingProgram& bp, const BitString& x,
                   std::uint64_t budget = kDefaultListBudget);
BitString bp_bob(Party& bob, const BranchingProgram& bp, const BitString& y, std::uint64_t budget = kDefaultListBudget);

CompiledRun compile_and_run_bp(const SessionConfig& cfg, const BranchingProgram& bp, const BitString& x,
                               const BitString& y, std::uint64_t budget = kDefaultListBudget);

// Tabulated program in which every node reads at most one bit of its owner's
// input and has one successor per bit value.
struct BpTableNode {
  static constexpr std::size_t kNoRead = std::numeric_limits<std::size_t>::max();
  std::size_t var = kNoRead;
  std::uint64_t succ[2] = {0, 0};
};

struct BpTable {
  std::vector<std::uint64_t> layer_sizes;
  std::vector<std::vector<BpTableNode>> layers;  // layers[l] covers L_l, l < c
  std::vector<std::uint64_t> leaves;
  std::size_t leaf_bits = 0;

  BranchingProgram to_program() const;
  void validate() const;
};

// Text form:
//   bp <c> <leaf_bits>
//   sizes <|L_0|> ... <|L_c|>
//   layer <l>            then one "<var|-> <succ0> <succ1>" line per node
//   leaves <z_0> ...
std::string write_bp_table(const BpTable& t);
BpTable read_bp_table(const std::string& text);

}  // namespace sfe
