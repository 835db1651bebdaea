#include "sfe/cost_meter.hpp"

#include <algorithm>
#include <string>

namespace sfe {

std::uint64_t CostMeter::total_ots() const {
  std::uint64_t n = 0;
  for (const auto& [w, c] : ot_by_width) n += c;
  return n;
}

void CostMeter::record_ot(std::uint64_t width, bool as_sender, bool keep_log) {
  if (as_sender) ++ot_by_width[width];
  if (keep_log) ot_width_log.push_back(width);
}

void CostMeter::record_base_ot(std::uint64_t width, std::uint64_t count) { base_ot_by_width[width] += count; }

CostMeter CostMeter::merge(const CostMeter& alice, const CostMeter& bob) {
  CostMeter m;
  for (const auto* src : {&alice, &bob}) {
    for (const auto& [w, c] : src->ot_by_width) m.ot_by_width[w] += c;
    for (const auto& [w, c] : src->base_ot_by_width) m.base_ot_by_width[w] += c;
    m.frames += src->frames;
    m.flights += src->flights;
    m.prf_evals += src->prf_evals;
    m.prg_bits += src->prg_bits;
    m.seed_bits_sent += src->seed_bits_sent;
  }
  m.bytes_a_to_b = alice.bytes_a_to_b;
  m.bytes_b_to_a = bob.bytes_b_to_a;
  // Both endpoints take part in every batch.
  m.ot_batches = std::max(alice.ot_batches, bob.ot_batches);
  m.ot_width_log = alice.ot_width_log;
  return m;
}

nlohmann::json CostMeter::to_json() const {
  auto widths = [](const std::map<std::uint64_t, std::uint64_t>& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [w, c] : m) j[std::to_string(w)] = c;
    return j;
  };
  return nlohmann::json{
      {"ot_invocations", widths(ot_by_width)},
      {"ot_total", total_ots()},
      {"base_ot_invocations", widths(base_ot_by_width)},
      {"ot_batches", ot_batches},
      {"bytes_sent", {{"a_to_b", bytes_a_to_b}, {"b_to_a", bytes_b_to_a}, {"total", total_bytes()}}},
      {"frames", frames},
      {"flights", flights},
      {"prf_evals", prf_evals},
      {"prg_bits", prg_bits},
      {"seed_bits_sent", seed_bits_sent},
  };
}

}  // namespace sfe
