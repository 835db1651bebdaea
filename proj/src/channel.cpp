#include "sfe/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "sfe/error.hpp"

namespace sfe {

void Channel::send(FrameType type, std::span<const std::uint8_t> payload) {
  std::vector<std::uint8_t> bytes;
  encode_frame_into(type, payload, bytes);
  if (!last_was_send_) ++stats_.flights;
  last_was_send_ = true;
  stats_.bytes_sent += bytes.size();
  ++stats_.frames_sent;
  send_encoded(std::move(bytes));
}

Frame Channel::recv() {
  Frame f = receive_frame();
  last_was_send_ = false;
  stats_.bytes_received += f.wire_size();
  ++stats_.frames_received;
  return f;
}

std::vector<std::uint8_t> Channel::recv_expect(FrameType type) {
  Frame f = recv();
  if (f.type != type)
    throw TransportError(std::string("expected ") + frame_type_name(type) + " frame, got " + frame_type_name(f.type));
  return std::move(f.payload);
}

namespace {

// One direction of the in-memory pipe.
struct Pipe {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::vector<std::uint8_t>> chunks;
  bool closed = false;
};

class MemChannel final : public Channel {
 public:
  MemChannel(std::shared_ptr<Pipe> out, std::shared_ptr<Pipe> in) : out_(std::move(out)), in_(std::move(in)) {}
  ~MemChannel() override { close(); }

  void close() override {
    for (auto* p : {out_.get(), in_.get()}) {
      std::lock_guard lk(p->mu);
      p->closed = true;
      p->cv.notify_all();
    }
  }

 protected:
  void send_encoded(std::vector<std::uint8_t> bytes) override {
    std::lock_guard lk(out_->mu);
    if (out_->closed) throw TransportError("send on closed channel");
    out_->chunks.push_back(std::move(bytes));
    out_->cv.notify_all();
  }

  Frame receive_frame() override {
    for (;;) {
      if (auto f = decoder_.next()) return std::move(*f);
      std::unique_lock lk(in_->mu);
      in_->cv.wait(lk, [&] { return !in_->chunks.empty() || in_->closed; });
      if (in_->chunks.empty()) throw TransportError("channel closed by peer");
      auto chunk = std::move(in_->chunks.front());
      in_->chunks.pop_front();
      lk.unlock();
      decoder_.feed(chunk);
    }
  }

 private:
  std::shared_ptr<Pipe> out_;
  std::shared_ptr<Pipe> in_;
  FrameDecoder decoder_;
};

class TcpChannel final : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd), inbox_(std::make_shared<Pipe>()) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    reader_ = std::thread([fd = fd_, inbox = inbox_] { read_loop(fd, inbox); });
  }

  ~TcpChannel() override {
    close();
    if (reader_.joinable()) reader_.join();
    ::close(fd_);
  }

  void close() override {
    if (!shut_) {
      shut_ = true;
      ::shutdown(fd_, SHUT_RDWR);
    }
  }

 protected:
  void send_encoded(std::vector<std::uint8_t> bytes) override {
    std::size_t off = 0;
    while (off < bytes.size()) {
      ssize_t n = ::send(fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("tcp send failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  Frame receive_frame() override {
    for (;;) {
      if (auto f = decoder_.next()) return std::move(*f);
      std::unique_lock lk(inbox_->mu);
      inbox_->cv.wait(lk, [&] { return !inbox_->chunks.empty() || inbox_->closed; });
      if (inbox_->chunks.empty()) throw TransportError("tcp connection closed");
      auto chunk = std::move(inbox_->chunks.front());
      inbox_->chunks.pop_front();
      lk.unlock();
      decoder_.feed(chunk);
    }
  }

 private:
  static void read_loop(int fd, std::shared_ptr<Pipe> inbox) {
    std::vector<std::uint8_t> buf(1 << 16);
    for (;;) {
      ssize_t n = ::recv(fd, buf.data(), buf.size(), 0);
      if (n < 0 && errno == EINTR) continue;
      std::lock_guard lk(inbox->mu);
      if (n <= 0) {
        inbox->closed = true;
        inbox->cv.notify_all();
        return;
      }
      inbox->chunks.emplace_back(buf.begin(), buf.begin() + n);
      inbox->cv.notify_all();
    }
  }

  int fd_;
  bool shut_ = false;
  std::shared_ptr<Pipe> inbox_;
  std::thread reader_;
  FrameDecoder decoder_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_mem_channel_pair() {
  auto ab = std::make_shared<Pipe>();
  auto ba = std::make_shared<Pipe>();
  return {std::make_unique<MemChannel>(ab, ba), std::make_unique<MemChannel>(ba, ab)};
}

std::unique_ptr<Channel> tcp_connect(const std::string& host, std::uint16_t port, int retry_ms) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res)
    throw TransportError("cannot resolve " + host);
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(retry_ms);
  for (;;) {
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0) break;
    if (::connect(fd, res->ai_addr, res->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      return std::make_unique<TcpChannel>(fd);
    }
    ::close(fd);
    if (std::chrono::steady_clock::now() > deadline) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  ::freeaddrinfo(res);
  throw TransportError("cannot connect to " + host + ":" + std::to_string(port));
}

TcpListener::TcpListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw TransportError("socket() failed");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd_, 4) != 0) {
    ::close(fd_);
    throw TransportError("cannot listen on port " + std::to_string(port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept() {
  int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) throw TransportError("accept() failed");
  return std::make_unique<TcpChannel>(fd);
}

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> make_tcp_loopback_pair() {
  TcpListener listener(0);
  std::unique_ptr<Channel> server;
  std::thread t([&] { server = listener.accept(); });
  auto client = tcp_connect("127.0.0.1", listener.port());
  t.join();
  return {std::move(client), std::move(server)};
}

std::pair<std::string, std::uint16_t> parse_host_port(const std::string& address) {
  auto colon = address.rfind(':');
  std::string host = colon == std::string::npos ? "127.0.0.1" : address.substr(0, colon);
  std::string port = colon == std::string::npos ? address : address.substr(colon + 1);
  if (host.empty()) host = "127.0.0.1";
  try {
    unsigned long p = std::stoul(port);
    if (p > 65535) throw std::out_of_range("port");
    return {host, static_cast<std::uint16_t>(p)};
  } catch (const std::exception&) {
    throw UsageError("bad host:port '" + address + "'");
  }
}

}  // namespace sfe
