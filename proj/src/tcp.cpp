#include "cfslab/runtime/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "cfslab/errors.hpp"
#include "cfslab/runtime/framing.hpp"

namespace cfslab {

namespace {

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

// false on orderly close before any byte, throws on mid-read close.
bool read_exact(int fd, std::uint8_t* out, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    ssize_t r = ::recv(fd, out + got, n - got, 0);
    if (r == 0) {
      if (got == 0) return false;
      throw TransportError("connection closed mid-frame");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("recv"));
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

void write_all(int fd, ByteView data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    ssize_t w = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw TransportError(errno_text("send"));
    }
    sent += static_cast<std::size_t>(w);
  }
}

// One whole frame (header included), or empty on clean EOF.
Bytes read_frame(int fd) {
  Bytes frame(kFrameHeaderSize);
  if (!read_exact(fd, frame.data(), kFrameHeaderSize)) return {};
  const std::size_t n = frame_payload_length(frame);
  frame.resize(kFrameHeaderSize + n);
  if (n > 0 && !read_exact(fd, frame.data() + kFrameHeaderSize, n)) throw TransportError("connection closed mid-frame");
  return frame;
}

}  // namespace

TcpServer::TcpServer(FrameHandler handler, std::string host, std::uint16_t port)
    : handler_(std::move(handler)), host_(std::move(host)), port_(port) {}

TcpServer::~TcpServer() { stop(); }

std::uint16_t TcpServer::listen() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw TransportError(errno_text("socket"));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port_);
  if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1) throw TransportError("invalid listen address " + host_);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) throw TransportError(errno_text("bind"));
  if (::listen(listen_fd_, 64) < 0) throw TransportError(errno_text("listen"));

  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  return port_;
}

void TcpServer::start() {
  if (listen_fd_ < 0) listen();
  acceptor_ = std::thread([this] { serve_forever(); });
}

void TcpServer::serve_forever() {
  if (listen_fd_ < 0) listen();
  while (!stopping_) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (stopping_) break;
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    std::lock_guard lock(connections_mutex_);
    open_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void TcpServer::serve_connection(int fd) {
  try {
    for (;;) {
      auto frame = read_frame(fd);
      if (frame.empty()) break;
      write_all(fd, handler_(frame));
    }
  } catch (const std::exception&) {
    // Framing failures and broken pipes end the connection.
  }
  std::lock_guard lock(connections_mutex_);
  for (auto it = open_fds_.begin(); it != open_fds_.end(); ++it) {
    if (*it == fd) {
      ::close(fd);
      open_fds_.erase(it);
      break;
    }
  }
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
  }
  if (acceptor_.joinable()) acceptor_.join();
  std::list<std::thread> workers;
  {
    std::lock_guard lock(connections_mutex_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
}

TcpTransport::TcpTransport(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  if (int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found); rc != 0) {
    throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  for (auto* ai = found; ai; ai = ai->ai_next) {
    fd_ = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd_ < 0) continue;
    if (::connect(fd_, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd_);
    fd_ = -1;
  }
  ::freeaddrinfo(found);
  if (fd_ < 0) throw TransportError("cannot connect to " + host + ":" + std::to_string(port));
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

TcpTransport::~TcpTransport() {
  if (fd_ >= 0) ::close(fd_);
}

Bytes TcpTransport::exchange(ByteView request_frame) {
  std::lock_guard lock(mutex_);
  write_all(fd_, request_frame);
  auto reply = read_frame(fd_);
  if (reply.empty()) throw TransportError("server closed the connection");
  return reply;
}

}  // namespace cfslab
