#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/cost_meter.hpp"
#include "sfe/indexing.hpp"
#include "sfe/party.hpp"
#include "sfe/session.hpp"

namespace sfe {

// A node of the full binary tree: its depth and its position n(v) from the
// left. The bits of `index` (big-endian over `depth` bits) are the messages
// on the path from the root.
struct TreeNode {
  std::size_t depth = 0;
  std::uint64_t index = 0;

  bool path_bit(std::size_t d) const { return (index >> (depth - 1 - d)) & 1U; }
};

// Protocol in the communication complexity model. Alice speaks at even
// depths, Bob at odd depths; leaves at depth c carry values of leaf_bits bits.
struct ProtocolTree {
  std::size_t depth = 0;
  std::size_t leaf_bits = 0;
  std::function<bool(const TreeNode&, const BitString& x)> alice_label;
  std::function<bool(const TreeNode&, const BitString& y)> bob_label;
  std::function<std::uint64_t(std::uint64_t leaf_index)> leaf_value;

  void validate() const;
};

inline constexpr std::uint64_t kDefaultListBudget = std::uint64_t{1} << 22;

std::uint64_t run_plaintext(const ProtocolTree& tree, const BitString& x, const BitString& y);

ProtocolTree build_hamming_tree(std::size_t n);
ProtocolTree build_constant_tree(std::size_t depth, std::uint64_t z, std::size_t leaf_bits);

// One party's lists. Alice: j and x_2, x_4, ..., x_c (x_c holds leaf values).
// Bob: y_1, y_3, ..., y_{c-1}.
struct InducedLists {
  Role role = Role::Alice;
  std::uint64_t j = 0;
  std::vector<IndexedList> lists;

  // Level number of lists[i].
  std::size_t level_of(std::size_t i) const { return role == Role::Alice ? 2 * i + 2 : 2 * i + 1; }
};

// Throws BudgetExceeded when the tree needs more than `budget` list entries.
void check_tree_budget(const ProtocolTree& tree, std::uint64_t budget = kDefaultListBudget);
InducedLists induce_lists(const ProtocolTree& tree, const BitString& input, Role role,
                          std::uint64_t budget = kDefaultListBudget);
GIndShape tree_shape(const ProtocolTree& tree);

// Text form: "j <v>" then one line per level, "y1 ..", "x2 ..", in level
// order, entries in decimal.
std::string dump_lists(const InducedLists& alice, const InducedLists& bob);
std::string dump_lists(const InducedLists& one);
// Parses the text form back into per-level entry vectors (index 0 holds j).
std::vector<std::vector<std::uint64_t>> parse_list_dump(const std::string& text);

// One endpoint of the compiled protocol; returns the party's XOR share of z.
BitString cc_alice(Party& alice, const ProtocolTree& tree, const BitString& x,
                   std::uint64_t budget = kDefaultListBudget);
BitString cc_bob(Party& bob, const ProtocolTree& tree, const BitString& y, std::uint64_t budget = kDefaultListBudget);

struct CompiledRun {
  std::uint64_t value = 0;
  BitString share_a;
  BitString share_b;
  CostMeter meter;
};

// Runs both endpoints in this process and reconstructs the result.
CompiledRun compile_and_run_cc(const SessionConfig& cfg, const ProtocolTree& tree, const BitString& x,
                               const BitString& y, std::uint64_t budget = kDefaultListBudget);

}  // namespace sfe
