#include "sfe/frame.hpp"

#include <string>

#include "sfe/error.hpp"

namespace sfe {

const char* frame_type_name(FrameType t) {
  switch (t) {
    case FrameType::Data: return "DATA";
    case FrameType::OtMsg: return "OT_MSG";
    case FrameType::Seed: return "SEED";
    case FrameType::End: return "END";
  }
  return "?";
}

void encode_frame_into(FrameType type, std::span<const std::uint8_t> payload, std::vector<std::uint8_t>& out) {
  if (payload.size() > kMaxFramePayload) throw TransportError("frame payload too large");
  auto n = static_cast<std::uint32_t>(payload.size());
  out.reserve(out.size() + kFrameHeaderSize + payload.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
  out.push_back(static_cast<std::uint8_t>(type));
  out.insert(out.end(), payload.begin(), payload.end());
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  std::vector<std::uint8_t> out;
  encode_frame_into(frame.type, frame.payload, out);
  return out;
}

void FrameDecoder::feed(std::span<const std::uint8_t> bytes) {
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  while (try_advance()) {
  }
}

bool FrameDecoder::try_advance() {
  switch (state_) {
    case State::Header: {
      if (buf_.size() < kFrameHeaderSize) return false;
      std::uint32_t n = 0;
      for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(buf_[static_cast<std::size_t>(i)]) << (8 * i);
      if (n > kMaxFramePayload) throw TransportError("frame length " + std::to_string(n) + " exceeds limit");
      std::uint8_t t = buf_[4];
      if (t > static_cast<std::uint8_t>(FrameType::End))
        throw TransportError("unknown frame type " + std::to_string(t));
      expected_ = n;
      pending_type_ = static_cast<FrameType>(t);
      buf_.erase(buf_.begin(), buf_.begin() + kFrameHeaderSize);
      state_ = State::Payload;
      return true;
    }
    case State::Payload: {
      if (buf_.size() < expected_) return false;
      Frame f{pending_type_, std::vector<std::uint8_t>(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(expected_))};
      buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(expected_));
      ready_.push_back(std::move(f));
      state_ = State::Header;
      return true;
    }
  }
  return false;
}

std::optional<Frame> FrameDecoder::next() {
  if (ready_head_ == ready_.size()) {
    ready_.clear();
    ready_head_ = 0;
    return std::nullopt;
  }
  return std::move(ready_[ready_head_++]);
}

}  // namespace sfe
