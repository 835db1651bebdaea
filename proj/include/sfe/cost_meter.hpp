#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "sfe/channel.hpp"

namespace sfe {

// Per-run tally of everything the cost bounds are stated in. Counters only
// grow during a run. OT invocations are recorded once, on the sender side,
// so merging the two endpoints' meters never double counts.
struct CostMeter {
  // Logical OT_1^w calls made by protocol code, keyed by width w.
  std::map<std::uint64_t, std::uint64_t> ot_by_width;
  // Primitive OTs actually executed by the backend (differs from the logical
  // census only for the OT_1^w-from-OT_1^2 reduction).
  std::map<std::uint64_t, std::uint64_t> base_ot_by_width;
  // Batches of concurrently executed OTs (one OT round trip each).
  std::uint64_t ot_batches = 0;
  // Widths in issue order; the census checks compare these sequences. Kept
  // by Alice's endpoint, which takes part in every OT.
  std::vector<std::uint64_t> ot_width_log;

  std::uint64_t bytes_a_to_b = 0;
  std::uint64_t bytes_b_to_a = 0;
  std::uint64_t frames = 0;
  std::uint64_t flights = 0;

  std::uint64_t prf_evals = 0;
  std::uint64_t prg_bits = 0;
  std::uint64_t seed_bits_sent = 0;

  std::uint64_t total_ots() const;
  std::uint64_t total_bytes() const { return bytes_a_to_b + bytes_b_to_a; }

  void record_ot(std::uint64_t width, bool as_sender, bool keep_log);
  void record_base_ot(std::uint64_t width, std::uint64_t count = 1);

  // Combines the meters of the two endpoints of one run.
  static CostMeter merge(const CostMeter& alice, const CostMeter& bob);

  nlohmann::json to_json() const;
};

}  // namespace sfe
