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

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "meol/backend/backend.hpp"

namespace meol::backend {

inline constexpr std::string_view kAddressEnv = "META_EMBED_ADDR";
inline constexpr std::string_view kFallbackAddress = "127.0.0.1:7878";

/// "host:port" for TCP or "unix:/path/to/socket".
struct Address {
  enum class Kind { Tcp, Unix };
  Kind kind = Kind::Tcp;
  std::string host;
  std::uint16_t port = 0;
  std::string path;

  static Address parse(std::string_view text);
  std::string to_string() const;
};

/// META_EMBED_ADDR if set, else 127.0.0.1:7878.
std::string default_address();

/// Owned socket with whole-frame send/receive.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  static Socket connect(const Address& addr);

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release() {
    int f = fd_;
    fd_ = -1;
    return f;
  }

  void send_frame(std::string_view body);
  /// Returns false on clean end-of-stream before any header byte.
  bool recv_frame(std::string& body);

 private:
  int fd_ = -1;
};

/// Serves a Backend over the framed protocol, one thread per connection.
class MockServer {
 public:
  MockServer(Address addr, std::shared_ptr<Backend> backend);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  /// Binds and starts accepting. A TCP port of 0 picks a free port.
  void start();
  void stop();
  /// The bound address (with the real port after start()).
  const Address& address() const { return addr_; }
  std::uint64_t requests_served() const { return served_.load(); }

 private:
  void accept_loop();
  void serve_connection(int fd);

  Address addr_;
  std::shared_ptr<Backend> backend_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::atomic<std::uint64_t> served_{0};
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<int> client_fds_;
  std::vector<std::thread> workers_;
};

}  // namespace meol::backend
