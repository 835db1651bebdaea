#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/indexing.hpp"
#include "sfe/party.hpp"
#include "sfe/session.hpp"

namespace sfe {

// Private look-up table: Alice holds (j_A, R_A), Bob holds (j_B, R_B), both
// tables of width w (a power of two) and m-bit entries. The parties end with
// XOR shares of R_A[j] ^ R_B[j] for j = j_A ^ j_B. Both OT_1^w calls go out in
// a single batch.
BitString lut_eval_alice(Party& alice, const BitString& j_a, const IndexedList& r_a);
BitString lut_eval_bob(Party& bob, const BitString& j_b, const IndexedList& r_b);

// Direct formula, for oracles.
BitString lut_plain(const BitString& j_a, const IndexedList& r_a, const BitString& j_b, const IndexedList& r_b);

using WireId = std::uint32_t;

enum class TableSource { Public, Alice, Bob, Wires };
const char* table_source_name(TableSource s);

struct LutGate {
  std::uint64_t width = 0;      // w, a power of two
  std::size_t entry_bits = 0;   // m
  std::vector<WireId> index;    // log2(w) wires, most significant first
  std::vector<WireId> outputs;  // m wires, most significant first
  TableSource source = TableSource::Public;
  std::vector<std::uint64_t> table;  // Public: w entries
  std::vector<WireId> table_wires;   // Wires: w*m wires, entry-major
};

// Each wire is written exactly once: by a constant, a party input or a gate
// output. Gates are listed in evaluation order.
struct LutCircuit {
  std::uint32_t num_wires = 0;
  std::vector<std::pair<WireId, bool>> constants;
  std::vector<WireId> alice_inputs;
  std::vector<WireId> bob_inputs;
  std::vector<WireId> outputs;
  std::vector<LutGate> gates;

  WireId add_wire() { return num_wires++; }
  std::vector<WireId> add_wires(std::size_t n);
  WireId add_constant(bool v);
  // Appends a gate and returns its output wires.
  std::vector<WireId> add_gate(LutGate g);

  void validate() const;
  // Topological depth of each gate (1 for gates fed only by inputs/constants).
  std::vector<std::size_t> gate_depths() const;
  std::size_t depth() const;
  // Two OT_1^w per gate.
  std::map<std::uint64_t, std::uint64_t> ot_census() const;
};

// Private tables keyed by gate position, for gates whose source is Alice/Bob.
using PrivateTables = std::map<std::size_t, std::vector<std::uint64_t>>;

BitString eval_lut_plain(const LutCircuit& c, const BitString& alice_in, const BitString& bob_in,
                         const PrivateTables& alice_tables = {}, const PrivateTables& bob_tables = {});

// Secure evaluation over XOR-shared wires; gates at equal depth share one OT
// batch. Returns this party's shares of the output wires.
BitString eval_lut_alice(Party& alice, const LutCircuit& c, const BitString& alice_in,
                         const PrivateTables& tables = {});
BitString eval_lut_bob(Party& bob, const LutCircuit& c, const BitString& bob_in, const PrivateTables& tables = {});

struct LutRun {
  BitString value;
  BitString share_a;
  BitString share_b;
  CostMeter meter;
};
LutRun run_lut_circuit(const SessionConfig& cfg, const LutCircuit& c, const BitString& alice_in,
                       const BitString& bob_in, const PrivateTables& alice_tables = {},
                       const PrivateTables& bob_tables = {});

// Text form, one item per line:
//   lut <num_wires>
//   const <wire> <0|1>
//   alice <wires...> / bob <wires...> / output <wires...>
//   gate <w> <m> idx <wires...> out <wires...> <public <entries...>|alice|bob|wires <wires...>>
std::string write_lut_circuit(const LutCircuit& c);
LutCircuit read_lut_circuit(const std::string& text);

// Width-4 truth-table gate on (a, b).
LutGate boolean_gate(WireId a, WireId b, WireId out, bool f00, bool f01, bool f10, bool f11);

}  // namespace sfe
