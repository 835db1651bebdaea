#include "sfe/lut.hpp"

#include <algorithm>
#include <sstream>

#include "sfe/error.hpp"
#include "sfe/ot.hpp"

namespace sfe {

namespace {

void check_lut_table(const IndexedList& r, const BitString& j) {
  r.validate();
  if (!is_power_of_two(r.width())) throw ProtocolError("LUT width must be a power of two");
  if (j.size() != ceil_log2(r.width())) throw ProtocolError("LUT index share must have log2(w) bits");
}

// Request order inside the batch: the Alice-sender OT first, then Bob's.
BitString lut_eval_party(Party& self, const BitString& j, const IndexedList& r) {
  check_lut_table(r, j);
  auto in = ShareDomain::xor_bits(j.size());
  auto out = ShareDomain::xor_bits(r.element_len);
  auto plan = prepare_index_send(self.rng(), j, r, in, out);
  std::vector<OtRequest> batch;
  auto choose = OtRequest::choose(r.width(), r.element_len, j.to_uint());
  if (self.is_alice()) {
    batch.push_back(std::move(plan.request));
    batch.push_back(std::move(choose));
  } else {
    batch.push_back(std::move(choose));
    batch.push_back(std::move(plan.request));
  }
  auto got = self.ot(batch);
  return plan.out_share ^ got[self.is_alice() ? 1 : 0];
}

}  // namespace

BitString lut_eval_alice(Party& alice, const BitString& j_a, const IndexedList& r_a) {
  return lut_eval_party(alice, j_a, r_a);
}

BitString lut_eval_bob(Party& bob, const BitString& j_b, const IndexedList& r_b) {
  return lut_eval_party(bob, j_b, r_b);
}

BitString lut_plain(const BitString& j_a, const IndexedList& r_a, const BitString& j_b, const IndexedList& r_b) {
  check_lut_table(r_a, j_a);
  check_lut_table(r_b, j_b);
  if (r_a.width() != r_b.width() || r_a.element_len != r_b.element_len)
    throw ProtocolError("LUT tables have different shapes");
  auto j = (j_a ^ j_b).to_uint();
  return r_a.entries[j] ^ r_b.entries[j];
}

const char* table_source_name(TableSource s) {
  switch (s) {
    case TableSource::Public: return "public";
    case TableSource::Alice: return "alice";
    case TableSource::Bob: return "bob";
    case TableSource::Wires: return "wires";
  }
  return "?";
}

std::vector<WireId> LutCircuit::add_wires(std::size_t n) {
  std::vector<WireId> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(add_wire());
  return out;
}

WireId LutCircuit::add_constant(bool v) {
  WireId w = add_wire();
  constants.emplace_back(w, v);
  return w;
}

std::vector<WireId> LutCircuit::add_gate(LutGate g) {
  if (g.outputs.empty()) g.outputs = add_wires(g.entry_bits);
  auto out = g.outputs;
  gates.push_back(std::move(g));
  return out;
}

void LutCircuit::validate() const {
  std::vector<bool> written(num_wires, false);
  auto write = [&](WireId w, const std::string& what) {
    if (w >= num_wires) throw ProtocolError(what + " uses wire " + std::to_string(w) + " out of range");
    if (written[w]) throw ProtocolError("wire " + std::to_string(w) + " is written more than once");
    written[w] = true;
  };
  auto read = [&](WireId w, const std::string& what) {
    if (w >= num_wires) throw ProtocolError(what + " uses wire " + std::to_string(w) + " out of range");
    if (!written[w]) throw ProtocolError(what + " reads wire " + std::to_string(w) + " before it is written");
  };
  for (const auto& [w, v] : constants) write(w, "constant");
  for (auto w : alice_inputs) write(w, "alice input");
  for (auto w : bob_inputs) write(w, "bob input");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    std::string what = "gate " + std::to_string(i);
    if (!is_power_of_two(g.width)) throw ProtocolError(what + " width is not a power of two");
    if (g.entry_bits == 0 || g.entry_bits > 64) throw ProtocolError(what + " entry length must be 1..64");
    if (g.index.size() != ceil_log2(g.width)) throw ProtocolError(what + " needs log2(w) index wires");
    if (g.outputs.size() != g.entry_bits) throw ProtocolError(what + " needs m output wires");
    for (auto w : g.index) read(w, what);
    switch (g.source) {
      case TableSource::Public:
        if (g.table.size() != g.width) throw ProtocolError(what + " public table needs w entries");
        for (auto e : g.table)
          if (g.entry_bits < 64 && e >> g.entry_bits) throw ProtocolError(what + " table entry does not fit m bits");
        break;
      case TableSource::Wires:
        if (g.table_wires.size() != g.width * g.entry_bits) throw ProtocolError(what + " needs w*m table wires");
        for (auto w : g.table_wires) read(w, what);
        break;
      default:
        break;
    }
    for (auto w : g.outputs) write(w, what);
  }
  for (auto w : outputs) read(w, "output");
}

std::vector<std::size_t> LutCircuit::gate_depths() const {
  std::vector<std::size_t> wire_depth(num_wires, 0), out;
  for (const auto& g : gates) {
    std::size_t d = 0;
    for (auto w : g.index) d = std::max(d, wire_depth[w]);
    for (auto w : g.table_wires) d = std::max(d, wire_depth[w]);
    for (auto w : g.outputs) wire_depth[w] = d + 1;
    out.push_back(d + 1);
  }
  return out;
}

std::size_t LutCircuit::depth() const {
  auto d = gate_depths();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::map<std::uint64_t, std::uint64_t> LutCircuit::ot_census() const {
  std::map<std::uint64_t, std::uint64_t> m;
  for (const auto& g : gates) m[g.width] += 2;
  return m;
}

namespace {

using Wires = std::vector<std::uint8_t>;

BitString gather(const Wires& v, const std::vector<WireId>& ids, std::size_t from = 0, std::size_t n = SIZE_MAX) {
  n = std::min(n, ids.size() - from);
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, v[ids[from + i]] != 0);
  return out;
}

void scatter(Wires& v, const std::vector<WireId>& ids, const BitString& bits) {
  for (std::size_t i = 0; i < ids.size(); ++i) v[ids[i]] = bits.get(i) ? 1 : 0;
}

// The table this party contributes to gate g.
IndexedList party_table(const LutGate& g, std::size_t gi, Role role, const Wires& shares, const PrivateTables& priv) {
  IndexedList t;
  t.element_len = g.entry_bits;
  auto zeros = [&] { t.entries.assign(g.width, BitString(g.entry_bits)); };
  auto from_private = [&] {
    auto it = priv.find(gi);
    if (it == priv.end()) throw ProtocolError("no private table supplied for gate " + std::to_string(gi));
    if (it->second.size() != g.width) throw ProtocolError("private table for gate " + std::to_string(gi) + " has wrong width");
    t = IndexedList::from_uints(it->second, g.entry_bits);
  };
  switch (g.source) {
    case TableSource::Public:
      if (role == Role::Alice)
        t = IndexedList::from_uints(g.table, g.entry_bits);
      else
        zeros();
      break;
    case TableSource::Alice:
      if (role == Role::Alice)
        from_private();
      else
        zeros();
      break;
    case TableSource::Bob:
      if (role == Role::Bob)
        from_private();
      else
        zeros();
      break;
    case TableSource::Wires:
      for (std::uint64_t e = 0; e < g.width; ++e) t.entries.push_back(gather(shares, g.table_wires, e * g.entry_bits, g.entry_bits));
      break;
  }
  return t;
}

Wires load_inputs(const LutCircuit& c, Role role, const BitString& in) {
  const auto& own = role == Role::Alice ? c.alice_inputs : c.bob_inputs;
  if (in.size() != own.size())
    throw ProtocolError(std::string(role == Role::Alice ? "alice" : "bob") + " input has " + std::to_string(in.size()) +
                        " bits, circuit expects " + std::to_string(own.size()));
  Wires v(c.num_wires, 0);
  for (const auto& [w, b] : c.constants)
    if (role == Role::Alice) v[w] = b ? 1 : 0;
  scatter(v, own, in);
  return v;
}

BitString eval_lut_party(Party& self, const LutCircuit& c, const BitString& in, const PrivateTables& tables) {
  c.validate();
  Wires v = load_inputs(c, self.role(), in);
  auto depths = c.gate_depths();
  std::size_t max_depth = depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
  std::vector<std::vector<std::size_t>> by_depth(max_depth + 1);
  for (std::size_t i = 0; i < c.gates.size(); ++i) by_depth[depths[i]].push_back(i);
  bool alice = self.is_alice();
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const auto& level = by_depth[d];
    std::vector<OtRequest> batch;
    std::vector<BitString> own_out;
    for (auto gi : level) {
      const auto& g = c.gates[gi];
      auto j = gather(v, g.index);
      auto plan = prepare_index_send(self.rng(), j, party_table(g, gi, self.role(), v, tables),
                                     ShareDomain::xor_bits(j.size()), ShareDomain::xor_bits(g.entry_bits));
      auto choose = OtRequest::choose(g.width, g.entry_bits, j.to_uint());
      if (alice) {
        batch.push_back(std::move(plan.request));
        batch.push_back(std::move(choose));
      } else {
        batch.push_back(std::move(choose));
        batch.push_back(std::move(plan.request));
      }
      own_out.push_back(plan.out_share);
    }
    auto got = self.ot(batch);
    for (std::size_t k = 0; k < level.size(); ++k)
      scatter(v, c.gates[level[k]].outputs, own_out[k] ^ got[2 * k + (alice ? 1 : 0)]);
  }
  return gather(v, c.outputs);
}

}  // namespace

BitString eval_lut_plain(const LutCircuit& c, const BitString& alice_in, const BitString& bob_in,
                         const PrivateTables& alice_tables, const PrivateTables& bob_tables) {
  c.validate();
  Wires a = load_inputs(c, Role::Alice, alice_in);
  Wires b = load_inputs(c, Role::Bob, bob_in);
  Wires v(c.num_wires);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] ^ b[i];
  Wires zero(c.num_wires, 0);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    auto j = gather(v, g.index).to_uint();
    auto ta = party_table(g, gi, Role::Alice, v, alice_tables);
    auto tb = party_table(g, gi, Role::Bob, zero, bob_tables);
    scatter(v, g.outputs, ta.entries[j] ^ tb.entries[j]);
  }
  return gather(v, c.outputs);
}

BitString eval_lut_alice(Party& alice, const LutCircuit& c, const BitString& alice_in, const PrivateTables& tables) {
  return eval_lut_party(alice, c, alice_in, tables);
}

BitString eval_lut_bob(Party& bob, const LutCircuit& c, const BitString& bob_in, const PrivateTables& tables) {
  return eval_lut_party(bob, c, bob_in, tables);
}

LutRun run_lut_circuit(const SessionConfig& cfg, const LutCircuit& c, const BitString& alice_in,
                       const BitString& bob_in, const PrivateTables& alice_tables, const PrivateTables& bob_tables) {
  c.validate();
  auto r = run_session(
      cfg, [&](Party& a) { return eval_lut_alice(a, c, alice_in, alice_tables); },
      [&](Party& b) { return eval_lut_bob(b, c, bob_in, bob_tables); });
  LutRun out;
  out.share_a = r.alice;
  out.share_b = r.bob;
  out.value = xor_reconstruct(r.alice, r.bob);
  out.meter = std::move(r.meter);
  return out;
}

namespace {

void put_wires(std::ostringstream& os, const std::vector<WireId>& ws) {
  for (auto w : ws) os << ' ' << w;
}

}  // namespace

std::string write_lut_circuit(const LutCircuit& c) {
  c.validate();
  std::ostringstream os;
  os << "lut " << c.num_wires << '\n';
  for (const auto& [w, v] : c.constants) os << "const " << w << ' ' << (v ? 1 : 0) << '\n';
  os << "alice";
  put_wires(os, c.alice_inputs);
  os << "\nbob";
  put_wires(os, c.bob_inputs);
  os << "\noutput";
  put_wires(os, c.outputs);
  os << '\n';
  for (const auto& g : c.gates) {
    os << "gate " << g.width << ' ' << g.entry_bits << " idx";
    put_wires(os, g.index);
    os << " out";
    put_wires(os, g.outputs);
    os << ' ' << table_source_name(g.source);
    if (g.source == TableSource::Public)
      for (auto e : g.table) os << ' ' << e;
    if (g.source == TableSource::Wires) put_wires(os, g.table_wires);
    os << '\n';
  }
  return os.str();
}

LutCircuit read_lut_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  LutCircuit c;
  bool header = false;
  auto read_all = [](std::istringstream& ls, auto& vec) {
    typename std::decay_t<decltype(vec)>::value_type x;
    while (ls >> x) vec.push_back(x);
  };
  auto read_n = [](std::istringstream& ls, std::vector<WireId>& vec, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      WireId w;
      if (!(ls >> w)) throw ProtocolError("lut text: short wire list");
      vec.push_back(w);
    }
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "lut") {
      if (!(ls >> c.num_wires)) throw ProtocolError("lut text: bad header");
      header = true;
      continue;
    }
    if (!header) throw ProtocolError("lut text: missing header");
    if (kw == "const") {
      WireId w;
      int v;
      if (!(ls >> w >> v) || (v != 0 && v != 1)) throw ProtocolError("lut text: bad constant");
      c.constants.emplace_back(w, v == 1);
    } else if (kw == "alice") {
      read_all(ls, c.alice_inputs);
    } else if (kw == "bob") {
      read_all(ls, c.bob_inputs);
    } else if (kw == "output") {
      read_all(ls, c.outputs);
    } else if (kw == "gate") {
      LutGate g;
      std::string tok;
      if (!(ls >> g.width >> g.entry_bits >> tok) || tok != "idx") throw ProtocolError("lut text: bad gate header");
      if (!is_power_of_two(g.width)) throw ProtocolError("lut text: gate width is not a power of two");
      read_n(ls, g.index, ceil_log2(g.width));
      if (!(ls >> tok) || tok != "out") throw ProtocolError("lut text: expected 'out'");
      read_n(ls, g.outputs, g.entry_bits);
      if (!(ls >> tok)) throw ProtocolError("lut text: missing table source");
      if (tok == "public") {
        g.source = TableSource::Public;
        read_all(ls, g.table);
      } else if (tok == "alice") {
        g.source = TableSource::Alice;
      } else if (tok == "bob") {
        g.source = TableSource::Bob;
      } else if (tok == "wires") {
        g.source = TableSource::Wires;
        read_all(ls, g.table_wires);
      } else {
        throw ProtocolError("lut text: unknown table source '" + tok + "'");
      }
      c.gates.push_back(std::move(g));
    } else {
      throw ProtocolError("lut text: unknown line '" + kw + "'");
    }
  }
  if (!header) throw ProtocolError("lut text: missing header");
  c.validate();
  return c;
}

LutGate boolean_gate(WireId a, WireId b, WireId out, bool f00, bool f01, bool f10, bool f11) {
  LutGate g;
  g.width = 4;
  g.entry_bits = 1;
  g.index = {a, b};
  g.outputs = {out};
  g.table = {f00 ? 1u : 0u, f01 ? 1u : 0u, f10 ? 1u : 0u, f11 ? 1u : 0u};
  return g;
}

}  // namespace sfe
