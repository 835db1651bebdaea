#include "sfe/party.hpp"

#include "sfe/error.hpp"
#include "sfe/ot.hpp"

namespace sfe {

Party::Party(Role role, Channel& channel, OtBackend& ot, SeededRng rng, SecurityParam security)
    : role_(role), channel_(channel), ot_(ot), rng_(std::move(rng)), security_(security) {}

void Party::send(FrameType type, std::span<const std::uint8_t> payload) {
  channel_.send(type, payload);
}

std::vector<std::uint8_t> Party::recv(FrameType type) {
  auto payload = channel_.recv_expect(type);
  record_view(payload);
  return payload;
}

void Party::send_bits(const BitString& bits, FrameType type) { send(type, bits.serialize()); }

BitString Party::recv_bits(FrameType type) {
  auto payload = recv(type);
  std::size_t used = 0;
  BitString out = BitString::deserialize(payload, &used);
  if (used != payload.size()) throw TransportError("trailing bytes after bit string");
  return out;
}

void Party::send_bit_list(std::span<const BitString> list, FrameType type) {
  std::vector<std::uint8_t> payload;
  auto n = static_cast<std::uint32_t>(list.size());
  for (int i = 0; i < 4; ++i) payload.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  for (const auto& b : list) b.serialize_into(payload);
  send(type, payload);
}

std::vector<BitString> Party::recv_bit_list(FrameType type) {
  auto payload = recv(type);
  if (payload.size() < 4) throw TransportError("truncated list frame");
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(payload[static_cast<std::size_t>(i)]) << (8 * i);
  std::vector<BitString> out;
  std::span<const std::uint8_t> rest(payload);
  rest = rest.subspan(4);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t used = 0;
    out.push_back(BitString::deserialize(rest, &used));
    rest = rest.subspan(used);
  }
  if (!rest.empty()) throw TransportError("trailing bytes after list");
  return out;
}

std::vector<BitString> Party::ot(std::span<const OtRequest> batch) {
  for (const auto& req : batch) {
    req.validate();
    meter_.record_ot(req.width, req.sender, role_ == Role::Alice);
  }
  ++meter_.ot_batches;
  auto out = ot_.run(*this, batch);
  for (std::size_t i = 0; i < batch.size(); ++i)
    if (!batch[i].sender) record_view(out[i].serialize());
  return out;
}

BitString Party::prf(const BitString& key, const BitString& input, std::size_t out_len_bits) {
  ++meter_.prf_evals;
  return prf_eval(key, input, out_len_bits);
}

BitString Party::prg(const BitString& seed, std::size_t out_len_bits) {
  meter_.prg_bits += out_len_bits;
  return prg_expand(seed, out_len_bits);
}

void Party::record_view(std::span<const std::uint8_t> bytes) {
  if (record_view_) view_.insert(view_.end(), bytes.begin(), bytes.end());
}

void Party::sync_channel_stats() {
  const auto& s = channel_.stats();
  if (role_ == Role::Alice)
    meter_.bytes_a_to_b = s.bytes_sent;
  else
    meter_.bytes_b_to_a = s.bytes_sent;
  meter_.frames = s.frames_sent;
  meter_.flights = s.flights;
}

}  // namespace sfe
