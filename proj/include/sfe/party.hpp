#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/channel.hpp"
#include "sfe/cost_meter.hpp"
#include "sfe/crypto.hpp"

namespace sfe {

class OtBackend;
struct OtRequest;

// One endpoint of a two-party run: its role, its end of the channel, its OT
// backend, its private coin stream and its meter. Each endpoint is a
// deterministic function of (input, seed, received messages).
class Party {
 public:
  Party(Role role, Channel& channel, OtBackend& ot, SeededRng rng, SecurityParam security = {});

  Role role() const { return role_; }
  bool is_alice() const { return role_ == Role::Alice; }
  Channel& channel() { return channel_; }
  OtBackend& ot_backend() { return ot_; }
  SeededRng& rng() { return rng_; }
  CostMeter& meter() { return meter_; }
  const CostMeter& meter() const { return meter_; }
  std::size_t k() const { return security_.k; }

  void send(FrameType type, std::span<const std::uint8_t> payload);
  std::vector<std::uint8_t> recv(FrameType type);

  void send_bits(const BitString& bits, FrameType type = FrameType::Data);
  BitString recv_bits(FrameType type = FrameType::Data);
  void send_bit_list(std::span<const BitString> list, FrameType type = FrameType::Data);
  std::vector<BitString> recv_bit_list(FrameType type = FrameType::Data);

  // Runs a batch of concurrent OTs (one round trip). Returns the chooser
  // output for each choose request and an empty string for send requests.
  std::vector<BitString> ot(std::span<const OtRequest> batch);

  BitString prf(const BitString& key, const BitString& input, std::size_t out_len_bits);
  BitString prg(const BitString& seed, std::size_t out_len_bits);

  // Everything this endpoint receives (frame payloads and OT outputs), for
  // the statistical privacy checks.
  void enable_view_recording() { record_view_ = true; }
  const std::vector<std::uint8_t>& view() const { return view_; }
  void record_view(std::span<const std::uint8_t> bytes);

  // Position of the next OT in this run; both endpoints count identically.
  std::uint64_t next_ot_sequence() { return ot_sequence_++; }

  // Copies the channel's byte/frame counters into the meter.
  void sync_channel_stats();

 private:
  Role role_;
  Channel& channel_;
  OtBackend& ot_;
  SeededRng rng_;
  SecurityParam security_;
  CostMeter meter_;
  bool record_view_ = false;
  std::vector<std::uint8_t> view_;
  std::uint64_t ot_sequence_ = 0;
};

}  // namespace sfe
