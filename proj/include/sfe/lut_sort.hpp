#pragma once

#include <cstdint>
#include <vector>

#include "sfe/lut.hpp"

namespace sfe {

// Merger and merge-sorter as LUT circuits over m-bit values. Each update
// gadget reads a[i_a] and b[i_b] through LUTs whose entries carry an
// "exhausted" flag bit, emits b[i_b] when a is exhausted or b[i_b] <= a[i_a],
// and advances the index it consumed.
struct SortCircuit {
  LutCircuit circuit;
  std::size_t n = 0;           // output length
  std::size_t value_bits = 0;  // m
  std::size_t gadgets = 0;
};

// Alice inputs a (n values), Bob inputs b (n values); output 2n values.
SortCircuit build_merge_circuit(std::size_t n, std::size_t value_bits);
// n a power of two. Alice inputs the first n/2 values (all of them when
// n = 1), Bob the rest.
SortCircuit build_sort_circuit(std::size_t n, std::size_t value_bits);

// Gates in one update gadget.
std::size_t merge_gadget_gates(std::size_t value_bits);

BitString pack_values(const std::vector<std::uint64_t>& values, std::size_t value_bits);
std::vector<std::uint64_t> unpack_values(const BitString& bits, std::size_t value_bits);

// Plain evaluation of the circuits. With check set, an unsorted result
// (unsorted inputs to the merger) raises ProtocolError.
std::vector<std::uint64_t> lut_merge(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                     std::size_t value_bits, bool check = true);
std::vector<std::uint64_t> lut_merge_sort(const std::vector<std::uint64_t>& values, std::size_t value_bits);

// Secure evaluation; values split between the parties as in build_sort_circuit.
struct SortRun {
  std::vector<std::uint64_t> sorted;
  CostMeter meter;
  std::size_t gadgets = 0;
};
SortRun secure_merge_sort(const SessionConfig& cfg, const std::vector<std::uint64_t>& values, std::size_t value_bits);

// Reference merge with the same tie rule.
std::vector<std::uint64_t> merge_reference(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

}  // namespace sfe
