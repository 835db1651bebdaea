#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/cc_tree.hpp"
#include "sfe/cost_meter.hpp"
#include "sfe/crypto.hpp"
#include "sfe/party.hpp"
#include "sfe/session.hpp"

namespace sfe {

using GWire = std::uint32_t;

// Two-input Boolean gate; bit (a << 1 | b) of `truth` is g(a, b).
struct BoolGate {
  std::uint8_t truth = 0;
  GWire a = 0;
  GWire b = 0;
  GWire out = 0;

  bool apply(bool x, bool y) const { return (truth >> ((x ? 2 : 0) | (y ? 1 : 0))) & 1; }
};

inline constexpr std::uint8_t kGateAnd = 0b1000;
inline constexpr std::uint8_t kGateXor = 0b0110;
inline constexpr std::uint8_t kGateOr = 0b1110;

// One party's next-message circuit with its input and coins hard-wired.
// msg_out[t] computes the party's t-th message, msg_in[t] receives the
// counterpart's t-th message, z (Alice only) is the final output.
struct NextMessageCircuit {
  std::uint32_t num_wires = 0;
  std::vector<std::pair<GWire, bool>> hardwired;
  std::vector<GWire> msg_in;
  std::vector<GWire> msg_out;
  std::vector<GWire> z;
  std::vector<BoolGate> gates;

  GWire add_wire() { return num_wires++; }
  GWire add_hardwired(bool v);
  GWire add_gate(std::uint8_t truth, GWire a, GWire b);

  void validate() const;
  // Same wiring with hard-wired values and gate functions blanked.
  NextMessageCircuit public_shape() const;
};

// Garbled value <W, c>: label bits then the colour bit.
struct WireSecret {
  BitString w0;
  BitString w1;
  bool perm = false;

  BitString garbled(bool b) const;
};

struct GarbledCircuit {
  std::vector<WireSecret> wires;
  std::vector<BitString> tables;  // 4 (k+1)-bit entries in (c_i, c_j) order
};

// F_W(c) tweaked by gate id and input position, k+1 output bits.
BitString garble_pad(const BitString& label, std::uint32_t gate, bool position, bool c, std::size_t k);

GarbledCircuit garble(const NextMessageCircuit& circ, SeededRng& rng, std::size_t k, CostMeter* meter = nullptr);
BitString eval_garbled_gate(const BitString& table, const BitString& in_a, const BitString& in_b, std::uint32_t gate,
                            std::size_t k, CostMeter* meter = nullptr);

// Translation table for wire j: entry c_i holds <W_j^0, pi_j> and entry
// 1 - c_i holds <W_j^1, 1 - pi_j>.
std::vector<BitString> translation_table(bool c_i, const WireSecret& target);

// Plain message passing between the two circuits; returns z.
BitString run_plain_circuits(const NextMessageCircuit& alice, const NextMessageCircuit& bob);

// One OT_1^2 per message. Each side garbles its own circuit and evaluates the
// counterpart's, whose public shape it is given. Alice returns z; Bob
// returns an empty string.
BitString garbled_alice(Party& alice, const NextMessageCircuit& own, const NextMessageCircuit& bob_shape);
BitString garbled_bob(Party& bob, const NextMessageCircuit& own, const NextMessageCircuit& alice_shape);

struct GarbledRun {
  BitString z;
  CostMeter meter;
  std::size_t messages = 0;
  std::size_t gates = 0;
};
GarbledRun run_garbled_protocol(const SessionConfig& cfg, const NextMessageCircuit& alice,
                                const NextMessageCircuit& bob);

// Next-message circuits of a protocol tree: each message is a multiplexer
// over the hard-wired labels of every node at its depth, selected by the
// earlier messages. Alice's circuit also computes the leaf value.
NextMessageCircuit tree_alice_circuit(const ProtocolTree& tree, const BitString& x);
NextMessageCircuit tree_bob_circuit(const ProtocolTree& tree, const BitString& y);

}  // namespace sfe
