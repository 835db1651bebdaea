#include "sfe/branching_program.hpp"

#include <algorithm>
#include <sstream>

#include "sfe/error.hpp"

namespace sfe {

std::uint64_t BranchingProgram::width() const {
  return layer_sizes.empty() ? 0 : *std::max_element(layer_sizes.begin(), layer_sizes.end());
}

std::uint64_t BranchingProgram::total_nodes() const {
  std::uint64_t n = 0;
  for (auto s : layer_sizes) n += s;
  return n;
}

void BranchingProgram::validate() const {
  if (layer_sizes.size() < 3 || depth() % 2 != 0) throw ProtocolError("branching program depth must be even and positive");
  if (layer_sizes.front() != 1) throw ProtocolError("branching program must start from a single node");
  for (auto s : layer_sizes)
    if (s == 0) throw ProtocolError("branching program has an empty layer");
  if (leaves.size() != layer_sizes.back()) throw ProtocolError("leaf value count differs from the last layer size");
  if (!next) throw ProtocolError("branching program has no transition function");
  for (auto z : leaves)
    if (leaf_bits < 64 && z >> leaf_bits) throw ProtocolError("leaf value does not fit leaf_bits");
}

std::vector<std::uint64_t> bp_walk(const BranchingProgram& bp, const BitString& x, const BitString& y) {
  bp.validate();
  std::vector<std::uint64_t> path{0};
  for (std::size_t l = 0; l < bp.depth(); ++l) {
    auto v = bp.next(l, path.back(), l % 2 == 0 ? x : y);
    if (v >= bp.layer_sizes[l + 1])
      throw ProtocolError("transition from layer " + std::to_string(l) + " leaves the next layer");
    path.push_back(v);
  }
  return path;
}

std::uint64_t run_plaintext_bp(const BranchingProgram& bp, const BitString& x, const BitString& y) {
  return bp.leaves[bp_walk(bp, x, y).back()];
}

GIndShape bp_shape(const BranchingProgram& bp) {
  GIndShape s;
  s.widths.assign(bp.layer_sizes.begin() + 1, bp.layer_sizes.end());
  s.leaf_bits = bp.leaf_bits;
  return s;
}

void check_bp_budget(const BranchingProgram& bp, std::uint64_t budget) {
  if (bp.total_nodes() > budget)
    throw BudgetExceeded("branching program needs " + std::to_string(bp.total_nodes()) +
                         " list entries, over the budget of " + std::to_string(budget));
}

InducedLists induce_bp_lists(const BranchingProgram& bp, const BitString& input, Role role, std::uint64_t budget) {
  bp.validate();
  check_bp_budget(bp, budget);
  auto shape = bp_shape(bp);
  InducedLists out;
  out.role = role;
  if (role == Role::Alice) out.j = bp.next(0, 0, input);
  std::size_t c = bp.depth();
  for (std::size_t level = role == Role::Alice ? 2 : 1; level <= c; level += 2) {
    IndexedList list;
    list.element_len = shape.out_domain(level).bits;
    for (std::uint64_t v = 0; v < bp.layer_sizes[level]; ++v) {
      std::uint64_t value = level == c ? bp.leaves[v] : bp.next(level, v, input);
      if (level < c && value >= bp.layer_sizes[level + 1])
        throw ProtocolError("transition from layer " + std::to_string(level) + " leaves the next layer");
      list.entries.push_back(BitString::from_uint(value, list.element_len));
    }
    out.lists.push_back(std::move(list));
  }
  if (out.j >= bp.layer_sizes[1]) throw ProtocolError("transition from layer 0 leaves layer 1");
  return out;
}

BitString bp_alice(Party& alice, const BranchingProgram& bp, const BitString& x, std::uint64_t budget) {
  auto lists = induce_bp_lists(bp, x, Role::Alice, budget);
  return gind_alice_public(alice, bp_shape(bp), lists.j, lists.lists);
}

BitString bp_bob(Party& bob, const BranchingProgram& bp, const BitString& y, std::uint64_t budget) {
  auto lists = induce_bp_lists(bp, y, Role::Bob, budget);
  return gind_bob_public(bob, bp_shape(bp), lists.lists);
}

CompiledRun compile_and_run_bp(const SessionConfig& cfg, const BranchingProgram& bp, const BitString& x,
                               const BitString& y, std::uint64_t budget) {
  check_bp_budget(bp, budget);
  auto r = run_session(
      cfg, [&](Party& a) { return bp_alice(a, bp, x, budget); }, [&](Party& b) { return bp_bob(b, bp, y, budget); });
  CompiledRun out;
  out.share_a = r.alice;
  out.share_b = r.bob;
  out.value = xor_reconstruct(r.alice, r.bob).to_uint();
  out.meter = std::move(r.meter);
  return out;
}

void BpTable::validate() const {
  if (layer_sizes.size() < 3 || (layer_sizes.size() - 1) % 2 != 0)
    throw ProtocolError("branching program depth must be even and positive");
  if (layers.size() != layer_sizes.size() - 1) throw ProtocolError("table needs one node list per non-final layer");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (layers[l].size() != layer_sizes[l]) throw ProtocolError("table layer " + std::to_string(l) + " has wrong size");
    for (const auto& n : layers[l])
      for (auto s : n.succ)
        if (s >= layer_sizes[l + 1]) throw ProtocolError("table successor out of range in layer " + std::to_string(l));
  }
}

BranchingProgram BpTable::to_program() const {
  validate();
  BranchingProgram bp;
  bp.layer_sizes = layer_sizes;
  bp.leaves = leaves;
  bp.leaf_bits = leaf_bits;
  bp.next = [layers = layers](std::size_t layer, std::uint64_t node, const BitString& input) {
    const auto& n = layers[layer][node];
    bool bit = n.var != BpTableNode::kNoRead && input.get(n.var);
    return n.succ[bit ? 1 : 0];
  };
  bp.validate();
  return bp;
}

std::string write_bp_table(const BpTable& t) {
  t.validate();
  std::ostringstream os;
  os << "bp " << t.layer_sizes.size() - 1 << ' ' << t.leaf_bits << '\n';
  os << "sizes";
  for (auto s : t.layer_sizes) os << ' ' << s;
  os << '\n';
  for (std::size_t l = 0; l < t.layers.size(); ++l) {
    os << "layer " << l << '\n';
    for (const auto& n : t.layers[l]) {
      if (n.var == BpTableNode::kNoRead)
        os << '-';
      else
        os << n.var;
      os << ' ' << n.succ[0] << ' ' << n.succ[1] << '\n';
    }
  }
  os << "leaves";
  for (auto z : t.leaves) os << ' ' << z;
  os << '\n';
  return os.str();
}

BpTable read_bp_table(const std::string& text) {
  std::istringstream in(text);
  auto expect = [&](const std::string& word) {
    std::string got;
    if (!(in >> got) || got != word) throw ProtocolError("bp text: expected '" + word + "'");
  };
  BpTable t;
  std::size_t c = 0;
  expect("bp");
  if (!(in >> c >> t.leaf_bits)) throw ProtocolError("bp text: bad header");
  expect("sizes");
  t.layer_sizes.resize(c + 1);
  for (auto& s : t.layer_sizes)
    if (!(in >> s)) throw ProtocolError("bp text: bad layer sizes");
  for (std::size_t l = 0; l < c; ++l) {
    expect("layer");
    std::size_t idx = 0;
    if (!(in >> idx) || idx != l) throw ProtocolError("bp text: layers out of order");
    std::vector<BpTableNode> nodes(t.layer_sizes[l]);
    for (auto& n : nodes) {
      std::string var;
      if (!(in >> var >> n.succ[0] >> n.succ[1])) throw ProtocolError("bp text: bad node line");
      n.var = var == "-" ? BpTableNode::kNoRead : std::stoul(var);
    }
    t.layers.push_back(std::move(nodes));
  }
  expect("leaves");
  t.leaves.resize(t.layer_sizes.back());
  for (auto& z : t.leaves)
    if (!(in >> z)) throw ProtocolError("bp text: bad leaf values");
  t.validate();
  return t;
}

}  // namespace sfe
