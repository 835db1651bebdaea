#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sfe {

// Wire format of one logical message:
//   [payload length: 4 bytes little-endian][type: 1 byte][payload]
enum class FrameType : std::uint8_t { Data = 0, OtMsg = 1, Seed = 2, End = 3 };

constexpr std::size_t kFrameHeaderSize = 5;
constexpr std::size_t kMaxFramePayload = std::size_t{1} << 30;

const char* frame_type_name(FrameType t);

struct Frame {
  FrameType type = FrameType::Data;
  std::vector<std::uint8_t> payload;

  std::size_t wire_size() const { return kFrameHeaderSize + payload.size(); }
  friend bool operator==(const Frame&, const Frame&) = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);
void encode_frame_into(FrameType type, std::span<const std::uint8_t> payload, std::vector<std::uint8_t>& out);

// Incremental decoder for a byte stream carrying frames back to back. Bytes may
// arrive in arbitrary chunks; complete frames are released in order.
class FrameDecoder {
 public:
  void feed(std::span<const std::uint8_t> bytes);
  std::optional<Frame> next();

  // True when no partial frame is buffered.
  bool idle() const { return state_ == State::Header && buf_.empty(); }

 private:
  enum class State { Header, Payload };

  bool try_advance();

  State state_ = State::Header;
  std::vector<std::uint8_t> buf_;
  std::size_t expected_ = 0;
  FrameType pending_type_ = FrameType::Data;
  std::vector<Frame> ready_;
  std::size_t ready_head_ = 0;
};

}  // namespace sfe
