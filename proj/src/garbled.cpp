#include "sfe/garbled.hpp"

#include "sfe/error.hpp"
#include "sfe/ot.hpp"

namespace sfe {

GWire NextMessageCircuit::add_hardwired(bool v) {
  GWire w = add_wire();
  hardwired.emplace_back(w, v);
  return w;
}

GWire NextMessageCircuit::add_gate(std::uint8_t truth, GWire a, GWire b) {
  GWire out = add_wire();
  gates.push_back({truth, a, b, out});
  return out;
}

void NextMessageCircuit::validate() const {
  std::vector<bool> written(num_wires, false);
  auto write = [&](GWire w, const char* what) {
    if (w >= num_wires) throw ProtocolError(std::string(what) + " wire out of range");
    if (written[w]) throw ProtocolError("wire " + std::to_string(w) + " is written more than once");
    written[w] = true;
  };
  for (const auto& [w, v] : hardwired) write(w, "hard-wired");
  for (auto w : msg_in) write(w, "message input");
  for (const auto& g : gates) {
    if (g.a >= num_wires || g.b >= num_wires || !written[g.a] || !written[g.b])
      throw ProtocolError("gate reads a wire before it is written");
    if (g.a == g.b) throw ProtocolError("gate inputs must be distinct wires");
    write(g.out, "gate output");
  }
  for (auto w : msg_out)
    if (w >= num_wires || !written[w]) throw ProtocolError("message output wire is never written");
  for (auto w : z)
    if (w >= num_wires || !written[w]) throw ProtocolError("output wire is never written");
}

NextMessageCircuit NextMessageCircuit::public_shape() const {
  NextMessageCircuit s = *this;
  for (auto& h : s.hardwired) h.second = false;
  for (auto& g : s.gates) g.truth = 0;
  return s;
}

BitString WireSecret::garbled(bool b) const {
  BitString out = b ? w1 : w0;
  BitString c(1);
  c.set(0, perm != b);
  return out.append(c);
}

BitString garble_pad(const BitString& label, std::uint32_t gate, bool position, bool c, std::size_t k) {
  BitString in = BitString::from_uint(gate, 32);
  BitString tail(2);
  tail.set(0, position);
  tail.set(1, c);
  in.append(tail);
  return prf_eval(label, in, k + 1);
}

namespace {

std::size_t label_bits(const BitString& garbled) { return garbled.size() - 1; }
bool colour(const BitString& garbled) { return garbled.get(garbled.size() - 1); }
BitString label_of(const BitString& garbled) { return garbled.slice(0, garbled.size() - 1); }

}  // namespace

GarbledCircuit garble(const NextMessageCircuit& circ, SeededRng& rng, std::size_t k, CostMeter* meter) {
  circ.validate();
  GarbledCircuit g;
  g.wires.resize(circ.num_wires);
  for (auto& w : g.wires) {
    w.perm = rng.bits(1).get(0);
    w.w0 = rng.bits(k);
    do w.w1 = rng.bits(k);
    while (w.w1 == w.w0);
  }
  for (std::uint32_t id = 0; id < circ.gates.size(); ++id) {
    const auto& gate = circ.gates[id];
    const auto& wi = g.wires[gate.a];
    const auto& wj = g.wires[gate.b];
    const auto& wk = g.wires[gate.out];
    BitString table;
    for (int ci = 0; ci < 2; ++ci)
      for (int cj = 0; cj < 2; ++cj) {
        bool bi = (ci != 0) != wi.perm, bj = (cj != 0) != wj.perm;
        BitString e = wk.garbled(gate.apply(bi, bj));
        e ^= garble_pad(bi ? wi.w1 : wi.w0, id, false, cj != 0, k);
        e ^= garble_pad(bj ? wj.w1 : wj.w0, id, true, ci != 0, k);
        table.append(e);
      }
    if (meter) meter->prf_evals += 8;
    g.tables.push_back(std::move(table));
  }
  return g;
}

BitString eval_garbled_gate(const BitString& table, const BitString& in_a, const BitString& in_b, std::uint32_t gate,
                            std::size_t k, CostMeter* meter) {
  if (table.size() != 4 * (k + 1) || in_a.size() != k + 1 || in_b.size() != k + 1)
    throw ProtocolError("garbled gate operands have the wrong length");
  bool ci = colour(in_a), cj = colour(in_b);
  std::size_t slot = (ci ? 2 : 0) + (cj ? 1 : 0);
  BitString e = table.slice(slot * (k + 1), k + 1);
  e ^= garble_pad(label_of(in_a), gate, false, cj, k);
  e ^= garble_pad(label_of(in_b), gate, true, ci, k);
  if (meter) meter->prf_evals += 2;
  return e;
}

std::vector<BitString> translation_table(bool c_i, const WireSecret& target) {
  std::vector<BitString> t(2);
  t[c_i ? 1 : 0] = target.garbled(false);
  t[c_i ? 0 : 1] = target.garbled(true);
  return t;
}

BitString run_plain_circuits(const NextMessageCircuit& alice, const NextMessageCircuit& bob) {
  alice.validate();
  bob.validate();
  if (alice.msg_out.size() != bob.msg_in.size() || bob.msg_out.size() != alice.msg_in.size())
    throw ProtocolError("message schedules of the two circuits disagree");
  std::vector<std::optional<bool>> va(alice.num_wires), vb(bob.num_wires);
  for (const auto& [w, v] : alice.hardwired) va[w] = v;
  for (const auto& [w, v] : bob.hardwired) vb[w] = v;
  auto settle = [](const NextMessageCircuit& c, std::vector<std::optional<bool>>& v) {
    for (const auto& g : c.gates)
      if (!v[g.out] && v[g.a] && v[g.b]) v[g.out] = g.apply(*v[g.a], *v[g.b]);
  };
  std::size_t c = alice.msg_out.size() + bob.msg_out.size();
  for (std::size_t l = 0; l < c; ++l) {
    bool from_alice = l % 2 == 0;
    auto& src = from_alice ? va : vb;
    auto& dst = from_alice ? vb : va;
    const auto& sc = from_alice ? alice : bob;
    const auto& dc = from_alice ? bob : alice;
    settle(sc, src);
    auto m = src[sc.msg_out[l / 2]];
    if (!m) throw ProtocolError("message " + std::to_string(l) + " is not computable from earlier messages");
    dst[dc.msg_in[l / 2]] = *m;
  }
  settle(alice, va);
  BitString z(alice.z.size());
  for (std::size_t i = 0; i < alice.z.size(); ++i) {
    if (!va[alice.z[i]]) throw ProtocolError("output is not computable");
    z.set(i, *va[alice.z[i]]);
  }
  return z;
}

namespace {

void check_schedule(const NextMessageCircuit& own, const NextMessageCircuit& other, bool alice) {
  own.validate();
  other.validate();
  if (own.msg_out.size() != other.msg_in.size() || other.msg_out.size() != own.msg_in.size())
    throw ProtocolError("message schedules of the two circuits disagree");
  std::size_t a_out = alice ? own.msg_out.size() : other.msg_out.size();
  std::size_t b_out = alice ? other.msg_out.size() : own.msg_out.size();
  if (a_out != b_out) throw ProtocolError("the garbled protocol needs an even number of alternating messages");
}

struct Evaluator {
  const NextMessageCircuit& circ;
  std::vector<BitString> tables;
  std::vector<std::optional<BitString>> values;
  std::size_t k;
  CostMeter& meter;
  std::size_t next_gate = 0;

  void settle() {
    for (std::uint32_t id = 0; id < circ.gates.size(); ++id) {
      const auto& g = circ.gates[id];
      if (!values[g.out] && values[g.a] && values[g.b])
        values[g.out] = eval_garbled_gate(tables[id], *values[g.a], *values[g.b], id, k, &meter);
    }
  }
  const BitString& get(GWire w, std::size_t msg) {
    settle();
    if (!values[w]) throw ProtocolError("message " + std::to_string(msg) + " is not computable from earlier messages");
    return *values[w];
  }
};

BitString garbled_run(Party& self, const NextMessageCircuit& own, const NextMessageCircuit& other) {
  bool alice = self.is_alice();
  check_schedule(own, other, alice);
  std::size_t k = self.k();
  auto g = garble(own, self.rng(), k, &self.meter());

  std::vector<BitString> setup;
  BitString header = BitString::from_uint(own.gates.size(), 32);
  header.append(BitString::from_uint(own.msg_out.size(), 16));
  header.append(BitString::from_uint(own.msg_in.size(), 16));
  setup.push_back(header);
  for (const auto& t : g.tables) setup.push_back(t);
  for (const auto& [w, v] : own.hardwired) setup.push_back(g.wires[w].garbled(v));
  self.send_bit_list(setup);

  auto got = self.recv_bit_list();
  if (got.empty() || got[0].size() != 64) throw ProtocolError("malformed garbled setup frame");
  if (got[0].slice(0, 32).to_uint() != other.gates.size() || got[0].slice(32, 16).to_uint() != other.msg_out.size() ||
      got[0].slice(48, 16).to_uint() != other.msg_in.size())
    throw ProtocolError("counterpart circuit does not match the agreed shape");
  if (got.size() != 1 + other.gates.size() + other.hardwired.size())
    throw ProtocolError("garbled setup frame has the wrong number of entries");
  Evaluator ev{other, {}, std::vector<std::optional<BitString>>(other.num_wires), k, self.meter()};
  for (std::size_t i = 0; i < other.gates.size(); ++i) {
    if (got[1 + i].size() != 4 * (k + 1)) throw ProtocolError("garbled table has the wrong length");
    ev.tables.push_back(got[1 + i]);
  }
  for (std::size_t i = 0; i < other.hardwired.size(); ++i) {
    const auto& v = got[1 + other.gates.size() + i];
    if (v.size() != k + 1) throw ProtocolError("garbled value has the wrong length");
    ev.values[other.hardwired[i].first] = v;
  }

  std::size_t c = own.msg_out.size() + own.msg_in.size();
  for (std::size_t l = 0; l < c; ++l) {
    bool mine = (l % 2 == 0) == alice;
    std::size_t t = l / 2;
    if (mine) {
      // Counterpart holds my message garbled under my labels; I learn it
      // under its labels by choosing my permutation bit.
      auto out = self.ot(std::vector<OtRequest>{OtRequest::choose(2, k + 1, g.wires[own.msg_out[t]].perm ? 1 : 0)});
      ev.values[other.msg_in[t]] = out[0];
    } else {
      const auto& held = ev.get(other.msg_out[t], l);
      self.ot(std::vector<OtRequest>{OtRequest::send(translation_table(colour(held), g.wires[own.msg_in[t]]))});
    }
  }

  if (!alice) {
    std::vector<BitString> zs;
    for (auto w : other.z) zs.push_back(ev.get(w, c));
    self.send_bit_list(zs);
    return BitString();
  }
  auto zs = self.recv_bit_list();
  if (zs.size() != own.z.size()) throw ProtocolError("output frame has the wrong number of values");
  BitString z(own.z.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const auto& s = g.wires[own.z[i]];
    if (zs[i].size() != k + 1) throw ProtocolError("garbled output has the wrong length");
    bool b = colour(zs[i]) != s.perm;
    if (label_of(zs[i]) != (b ? s.w1 : s.w0)) throw ProtocolError("garbled output label does not verify");
    z.set(i, b);
  }
  return z;
}

}  // namespace

BitString garbled_alice(Party& alice, const NextMessageCircuit& own, const NextMessageCircuit& bob_shape) {
  return garbled_run(alice, own, bob_shape);
}

BitString garbled_bob(Party& bob, const NextMessageCircuit& own, const NextMessageCircuit& alice_shape) {
  return garbled_run(bob, own, alice_shape);
}

GarbledRun run_garbled_protocol(const SessionConfig& cfg, const NextMessageCircuit& alice,
                                const NextMessageCircuit& bob) {
  auto a_shape = alice.public_shape(), b_shape = bob.public_shape();
  auto r = run_session(
      cfg, [&](Party& p) { return garbled_alice(p, alice, b_shape); },
      [&](Party& p) { return garbled_bob(p, bob, a_shape); });
  GarbledRun out;
  out.z = r.alice;
  out.meter = std::move(r.meter);
  out.messages = alice.msg_out.size() + bob.msg_out.size();
  out.gates = alice.gates.size() + bob.gates.size();
  return out;
}

namespace {

// Multiplexer over consts indexed big-endian by sel.
GWire select(NextMessageCircuit& c, const std::vector<GWire>& consts, const std::vector<GWire>& sel, std::size_t from,
             std::size_t lo, std::size_t n) {
  if (n == 1) return consts[lo];
  GWire a = select(c, consts, sel, from + 1, lo, n / 2);
  GWire b = select(c, consts, sel, from + 1, lo + n / 2, n / 2);
  GWire d = c.add_gate(kGateXor, a, b);
  GWire e = c.add_gate(kGateAnd, sel[from], d);
  return c.add_gate(kGateXor, a, e);
}

NextMessageCircuit tree_circuit(const ProtocolTree& tree, const BitString& input, bool alice) {
  tree.validate();
  if (tree.depth > 16) throw ProtocolError("tree too deep to unroll into a circuit");
  NextMessageCircuit c;
  std::vector<GWire> transcript;
  for (std::size_t l = 0; l < tree.depth; ++l) {
    bool mine = (l % 2 == 0) == alice;
    if (mine) {
      std::vector<GWire> consts;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << l); ++v) {
        TreeNode node{l, v};
        consts.push_back(c.add_hardwired(alice ? tree.alice_label(node, input) : tree.bob_label(node, input)));
      }
      GWire m = select(c, consts, transcript, 0, 0, consts.size());
      c.msg_out.push_back(m);
      transcript.push_back(m);
    } else {
      GWire m = c.add_wire();
      c.msg_in.push_back(m);
      transcript.push_back(m);
    }
  }
  if (alice) {
    std::uint64_t leaves = std::uint64_t{1} << tree.depth;
    for (std::size_t bit = 0; bit < tree.leaf_bits; ++bit) {
      std::vector<GWire> consts;
      for (std::uint64_t v = 0; v < leaves; ++v)
        consts.push_back(c.add_hardwired((tree.leaf_value(v) >> (tree.leaf_bits - 1 - bit)) & 1));
      c.z.push_back(select(c, consts, transcript, 0, 0, consts.size()));
    }
  }
  c.validate();
  return c;
}

}  // namespace

NextMessageCircuit tree_alice_circuit(const ProtocolTree& tree, const BitString& x) { return tree_circuit(tree, x, true); }

NextMessageCircuit tree_bob_circuit(const ProtocolTree& tree, const BitString& y) { return tree_circuit(tree, y, false); }

}  // namespace sfe
