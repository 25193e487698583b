// Copyright 2026 The meol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "meol/backend/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "meol/error.hpp"

namespace meol::backend {

namespace {

std::string errno_text() { return std::strerror(errno); }

bool write_all(int fd, const char* data, std::size_t n) {
  while (n > 0) {
    ssize_t w = ::send(fd, data, n, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += w;
    n -= static_cast<std::size_t>(w);
  }
  return true;
}

// Returns bytes read; fewer than n means end-of-stream.
std::size_t read_all(int fd, char* data, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    ssize_t r = ::recv(fd, data + got, n - got, 0);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw BackendUnavailable("recv failed: " + errno_text());
    }
    if (r == 0) break;
    got += static_cast<std::size_t>(r);
  }
  return got;
}

}  // namespace

Address Address::parse(std::string_view text) {
  Address a;
  if (text.starts_with("unix:")) {
    a.kind = Kind::Unix;
    a.path = std::string(text.substr(5));
    if (a.path.empty()) throw ConfigError("empty unix socket path in address \"" + std::string(text) + "\"");
    return a;
  }
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ConfigError("address \"" + std::string(text) + "\" is not host:port or unix:/path");
  a.host = std::string(text.substr(0, colon));
  if (a.host.size() > 2 && a.host.front() == '[' && a.host.back() == ']') a.host = a.host.substr(1, a.host.size() - 2);
  auto port = text.substr(colon + 1);
  unsigned value = 0;
  auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || p != port.data() + port.size() || value > 65535)
    throw ConfigError("bad port in address \"" + std::string(text) + "\"");
  a.port = static_cast<std::uint16_t>(value);
  return a;
}

std::string Address::to_string() const {
  if (kind == Kind::Unix) return "unix:" + path;
  return host + ":" + std::to_string(port);
}

std::string default_address() {
  if (const char* env = std::getenv(std::string(kAddressEnv).c_str()); env && *env) return env;
  return std::string(kFallbackAddress);
}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.release();
  }
  return *this;
}

Socket::~Socket() {
  if (fd_ >= 0) ::close(fd_);
}

Socket Socket::connect(const Address& addr) {
  if (addr.kind == Address::Kind::Unix) {
    sockaddr_un sa{};
    sa.sun_family = AF_UNIX;
    if (addr.path.size() >= sizeof sa.sun_path) throw ConfigError("unix socket path too long: " + addr.path);
    std::memcpy(sa.sun_path, addr.path.c_str(), addr.path.size() + 1);
    Socket s(::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0));
    if (!s.valid()) throw BackendUnavailable("socket: " + errno_text());
    if (::connect(s.fd(), reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0)
      throw BackendUnavailable("cannot connect to " + addr.to_string() + ": " + errno_text());
    return s;
  }
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string port = std::to_string(addr.port);
  if (int rc = ::getaddrinfo(addr.host.c_str(), port.c_str(), &hints, &res); rc != 0)
    throw BackendUnavailable("cannot resolve " + addr.host + ": " + gai_strerror(rc));
  std::string last_error = "no addresses";
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol));
    if (!s.valid()) continue;
    if (::connect(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      int one = 1;
      ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return s;
    }
    last_error = errno_text();
  }
  ::freeaddrinfo(res);
  throw BackendUnavailable("cannot connect to " + addr.to_string() + ": " + last_error);
}

void Socket::send_frame(std::string_view body) {
  std::string bytes = frame(body);
  if (!write_all(fd_, bytes.data(), bytes.size())) throw BackendUnavailable("send failed: " + errno_text());
}

bool Socket::recv_frame(std::string& body) {
  unsigned char header[4];
  std::size_t got = read_all(fd_, reinterpret_cast<char*>(header), 4);
  if (got == 0) return false;
  if (got < 4) throw ProtocolError("connection closed inside frame header");
  std::uint32_t n = read_frame_length(header);
  if (n > kMaxFrameBytes) throw ProtocolError("frame length " + std::to_string(n) + " exceeds limit");
  body.resize(n);
  if (read_all(fd_, body.data(), n) < n) throw ProtocolError("connection closed inside frame body");
  return true;
}

MockServer::MockServer(Address addr, std::shared_ptr<Backend> backend)
    : addr_(std::move(addr)), backend_(std::move(backend)) {}

MockServer::~MockServer() { stop(); }

void MockServer::start() {
  if (running_) return;
  if (addr_.kind == Address::Kind::Unix) {
    sockaddr_un sa{};
    sa.sun_family = AF_UNIX;
    if (addr_.path.size() >= sizeof sa.sun_path) throw ConfigError("unix socket path too long: " + addr_.path);
    std::memcpy(sa.sun_path, addr_.path.c_str(), addr_.path.size() + 1);
    ::unlink(addr_.path.c_str());
    listen_fd_ = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (listen_fd_ < 0 || ::bind(listen_fd_, reinterpret_cast<sockaddr*>(&sa), sizeof sa) != 0)
      throw BackendUnavailable("cannot bind " + addr_.to_string() + ": " + errno_text());
  } else {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    std::string port = std::to_string(addr_.port);
    if (int rc = ::getaddrinfo(addr_.host.c_str(), port.c_str(), &hints, &res); rc != 0)
      throw BackendUnavailable("cannot resolve " + addr_.host + ": " + gai_strerror(rc));
    listen_fd_ = ::socket(res->ai_family, res->ai_socktype | SOCK_CLOEXEC, res->ai_protocol);
    int one = 1;
    if (listen_fd_ >= 0) ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (listen_fd_ < 0 || ::bind(listen_fd_, res->ai_addr, res->ai_addrlen) != 0) {
      ::freeaddrinfo(res);
      throw BackendUnavailable("cannot bind " + addr_.to_string() + ": " + errno_text());
    }
    ::freeaddrinfo(res);
    sockaddr_storage bound{};
    socklen_t len = sizeof bound;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    if (bound.ss_family == AF_INET) addr_.port = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
    else if (bound.ss_family == AF_INET6) addr_.port = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
  }
  if (::listen(listen_fd_, 64) != 0) throw BackendUnavailable("listen failed: " + errno_text());
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void MockServer::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> workers;
  {
    std::lock_guard lock(mu_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (auto& t : workers) t.join();
  if (addr_.kind == Address::Kind::Unix) ::unlink(addr_.path.c_str());
  listen_fd_ = -1;
}

void MockServer::accept_loop() {
  while (running_) {
    pollfd p{listen_fd_, POLLIN, 0};
    int rc = ::poll(&p, 1, 100);
    if (rc <= 0) continue;
    int fd = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    std::lock_guard lock(mu_);
    if (!running_) {
      ::close(fd);
      break;
    }
    client_fds_.push_back(fd);
    workers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void MockServer::serve_connection(int fd) {
  Socket s(fd);
  std::string body;
  try {
    while (running_ && s.recv_frame(body)) {
      std::string reply;
      std::string request_id;
      try {
        EmbedRequest req = request_from_json(body);
        request_id = req.request_id;
        reply = response_to_json(backend_->embed(req));
      } catch (const Error& e) {
        reply = error_to_json(e.what(), request_id);
      }
      s.send_frame(reply);
      ++served_;
    }
  } catch (const Error&) {
    // peer went away mid-frame
  }
  std::lock_guard lock(mu_);
  client_fds_.erase(std::remove(client_fds_.begin(), client_fds_.end(), fd), client_fds_.end());
}

}  // namespace meol::backend
