#include "sfe/cc_tree.hpp"

#include <sstream>

#include "sfe/error.hpp"

namespace sfe {

void ProtocolTree::validate() const {
  if (depth == 0 || depth % 2 != 0) throw ProtocolError("protocol tree depth must be even and positive");
  if (!alice_label || !bob_label || !leaf_value) throw ProtocolError("protocol tree is missing a label function");
  if (leaf_bits > 64) throw ProtocolError("leaf values are limited to 64 bits");
}

std::uint64_t run_plaintext(const ProtocolTree& tree, const BitString& x, const BitString& y) {
  tree.validate();
  TreeNode v;
  for (; v.depth < tree.depth; ++v.depth) {
    bool bit = v.depth % 2 == 0 ? tree.alice_label(v, x) : tree.bob_label(v, y);
    v.index = 2 * v.index + (bit ? 1 : 0);
  }
  return tree.leaf_value(v.index);
}

ProtocolTree build_hamming_tree(std::size_t n) {
  if (n == 0) throw ProtocolError("hamming tree needs n >= 1");
  ProtocolTree t;
  t.depth = 2 * n;
  t.leaf_bits = ceil_log2(n + 1);
  t.alice_label = [](const TreeNode& v, const BitString& x) { return x.get(v.depth / 2); };
  t.bob_label = [](const TreeNode& v, const BitString& y) { return y.get(v.depth / 2) != v.path_bit(v.depth - 1); };
  t.leaf_value = [depth = t.depth](std::uint64_t leaf) {
    TreeNode v{depth, leaf};
    std::uint64_t ones = 0;
    for (std::size_t d = 1; d < depth; d += 2) ones += v.path_bit(d) ? 1 : 0;
    return ones;
  };
  return t;
}

ProtocolTree build_constant_tree(std::size_t depth, std::uint64_t z, std::size_t leaf_bits) {
  ProtocolTree t;
  t.depth = depth;
  t.leaf_bits = leaf_bits;
  t.alice_label = [](const TreeNode&, const BitString&) { return false; };
  t.bob_label = [](const TreeNode&, const BitString&) { return false; };
  t.leaf_value = [z](std::uint64_t) { return z; };
  return t;
}

void check_tree_budget(const ProtocolTree& tree, std::uint64_t budget) {
  bool over = tree.depth >= 62 || (std::uint64_t{2} << tree.depth) - 2 > budget;
  if (over) {
    std::ostringstream msg;
    msg << "protocol tree of depth " << tree.depth << " needs 2^" << tree.depth + 1
        << " - 2 list entries, over the budget of " << budget;
    throw BudgetExceeded(msg.str());
  }
}

InducedLists induce_lists(const ProtocolTree& tree, const BitString& input, Role role, std::uint64_t budget) {
  tree.validate();
  check_tree_budget(tree, budget);
  InducedLists out;
  out.role = role;
  if (role == Role::Alice) out.j = tree.alice_label(TreeNode{0, 0}, input) ? 1 : 0;
  for (std::size_t level = role == Role::Alice ? 2 : 1; level <= tree.depth; level += 2) {
    std::uint64_t width = std::uint64_t{1} << level;
    IndexedList list;
    list.element_len = level == tree.depth ? tree.leaf_bits : level + 1;
    list.entries.reserve(width);
    for (std::uint64_t n = 0; n < width; ++n) {
      std::uint64_t value;
      if (level == tree.depth) {
        value = tree.leaf_value(n);
      } else {
        TreeNode v{level, n};
        bool bit = role == Role::Alice ? tree.alice_label(v, input) : tree.bob_label(v, input);
        value = 2 * n + (bit ? 1 : 0);
      }
      list.entries.push_back(BitString::from_uint(value, list.element_len));
    }
    out.lists.push_back(std::move(list));
  }
  return out;
}

GIndShape tree_shape(const ProtocolTree& tree) {
  GIndShape s;
  for (std::size_t level = 1; level <= tree.depth; ++level) s.widths.push_back(std::uint64_t{1} << level);
  s.leaf_bits = tree.leaf_bits;
  return s;
}

namespace {

void dump_line(std::ostringstream& os, Role role, std::size_t level, const IndexedList& list) {
  os << (role == Role::Alice ? 'x' : 'y') << level;
  for (const auto& e : list.entries) os << ' ' << e.to_uint();
  os << '\n';
}

}  // namespace

std::string dump_lists(const InducedLists& alice, const InducedLists& bob) {
  if (alice.role != Role::Alice || bob.role != Role::Bob) throw ProtocolError("dump_lists expects (Alice, Bob) lists");
  std::ostringstream os;
  os << "j " << alice.j << '\n';
  std::size_t levels = alice.lists.size() + bob.lists.size();
  for (std::size_t level = 1; level <= levels; ++level) {
    if (level % 2 == 1)
      dump_line(os, Role::Bob, level, bob.lists.at(level / 2));
    else
      dump_line(os, Role::Alice, level, alice.lists.at(level / 2 - 1));
  }
  return os.str();
}

std::string dump_lists(const InducedLists& one) {
  std::ostringstream os;
  if (one.role == Role::Alice) os << "j " << one.j << '\n';
  for (std::size_t i = 0; i < one.lists.size(); ++i) dump_line(os, one.role, one.level_of(i), one.lists[i]);
  return os.str();
}

std::vector<std::vector<std::uint64_t>> parse_list_dump(const std::string& text) {
  std::vector<std::vector<std::uint64_t>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    std::size_t level = 0;
    if (tag != "j") {
      if (tag.size() < 2 || (tag[0] != 'x' && tag[0] != 'y')) throw ProtocolError("bad list dump tag '" + tag + "'");
      level = std::stoul(tag.substr(1));
    }
    if (out.size() <= level) out.resize(level + 1);
    std::uint64_t v;
    while (ls >> v) out[level].push_back(v);
  }
  return out;
}

BitString cc_alice(Party& alice, const ProtocolTree& tree, const BitString& x, std::uint64_t budget) {
  auto lists = induce_lists(tree, x, Role::Alice, budget);
  return gind_alice_public(alice, tree_shape(tree), lists.j, lists.lists);
}

BitString cc_bob(Party& bob, const ProtocolTree& tree, const BitString& y, std::uint64_t budget) {
  auto lists = induce_lists(tree, y, Role::Bob, budget);
  return gind_bob_public(bob, tree_shape(tree), lists.lists);
}

CompiledRun compile_and_run_cc(const SessionConfig& cfg, const ProtocolTree& tree, const BitString& x,
                               const BitString& y, std::uint64_t budget) {
  check_tree_budget(tree, budget);
  auto r = run_session(
      cfg, [&](Party& a) { return cc_alice(a, tree, x, budget); }, [&](Party& b) { return cc_bob(b, tree, y, budget); });
  CompiledRun out;
  out.share_a = r.alice;
  out.share_b = r.bob;
  out.value = xor_reconstruct(r.alice, r.bob).to_uint();
  out.meter = std::move(r.meter);
  return out;
}

}  // namespace sfe
