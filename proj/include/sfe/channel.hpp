#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfe/frame.hpp"

namespace sfe {

struct ChannelStats {
  std::uint64_t bytes_sent = 0;
  std::uint64_t frames_sent = 0;
  std::uint64_t bytes_received = 0;
  std::uint64_t frames_received = 0;
  // Number of maximal runs of consecutive sends (one "flight" per turn).
  std::uint64_t flights = 0;
};

// Ordered, reliable duplex stream of frames between the two endpoints.
class Channel {
 public:
  explicit Channel(std::uint32_t id = 0) : id_(id) {}
  virtual ~Channel() = default;
  Channel(const Channel&) = delete;
  Channel& operator=(const Channel&) = delete;

  void send(FrameType type, std::span<const std::uint8_t> payload);
  Frame recv();
  // Receives one frame and checks its type; TransportError otherwise.
  std::vector<std::uint8_t> recv_expect(FrameType type);

  // Unblocks a peer waiting in recv(); further sends fail.
  virtual void close() = 0;

  const ChannelStats& stats() const { return stats_; }
  std::uint32_t id() const { return id_; }

 protected:
  virtual void send_encoded(std::vector<std::uint8_t> bytes) = 0;
  virtual Frame receive_frame() = 0;

 private:
  std::uint32_t id_;
  ChannelStats stats_;
  bool last_was_send_ = false;
};

// In-process pair; frames travel encoded and are decoded on the far side.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_mem_channel_pair();

// TCP transport. A background reader drains the socket so sends never block on
// the peer's progress.
std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port, int retry_ms = 5000);

class TcpListener {
 public:
  explicit TcpListener(std::uint16_t port);  // port 0 picks an ephemeral port
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<Channel> accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Loopback TCP pair inside one process.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_tcp_loopback_pair();

std::pair<std::string, std::uint16_t> parse_host_port(const std::string& address);

}  // namespace sfe
