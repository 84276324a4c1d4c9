#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <list>
#include <mutex>
#include <string>
#include <thread>

#include "cfslab/bytes.hpp"
#include "cfslab/protocol/transport.hpp"

namespace cfslab {

inline constexpr std::uint16_t kDefaultPort = 7745;

// Maps one complete request frame to one complete reply frame.
using FrameHandler = std::function<Bytes(ByteView)>;

// Framed-JSON listener. One thread per connection; a connection that sends
// an unreadable or over-length frame header is closed.
class TcpServer {
 public:
  TcpServer(FrameHandler handler, std::string host = "127.0.0.1", std::uint16_t port = kDefaultPort);
  ~TcpServer();

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  // Binds and listens; returns the bound port (useful with port 0).
  std::uint16_t listen();

  // Accept loop on a background thread.
  void start();

  // Accept loop on the calling thread until stop().
  void serve_forever();

  void stop();

  std::uint16_t port() const noexcept { return port_; }

 private:
  void serve_connection(int fd);

  FrameHandler handler_;
  std::string host_;
  std::uint16_t port_;
  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex connections_mutex_;
  std::list<std::thread> workers_;
  std::list<int> open_fds_;
};

// Client side of the same framing over one persistent connection.
class TcpTransport final : public Transport {
 public:
  TcpTransport(const std::string& host, std::uint16_t port);
  ~TcpTransport() override;

  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

  Bytes exchange(ByteView request_frame) override;

 private:
  int fd_ = -1;
  std::mutex mutex_;
};

}  // namespace cfslab
