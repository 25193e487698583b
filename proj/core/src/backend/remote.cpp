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

#include "meol/backend/remote.hpp"

#include "meol/error.hpp"

namespace meol::backend {

RemoteBackend::RemoteBackend(Address addr, std::size_t pool_cap) : addr_(std::move(addr)), cap_(std::max<std::size_t>(1, pool_cap)) {}

Socket RemoteBackend::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return !idle_.empty() || open_ < cap_; });
  if (!idle_.empty()) {
    Socket s = std::move(idle_.back());
    idle_.pop_back();
    return s;
  }
  ++open_;
  lock.unlock();
  try {
    return Socket::connect(addr_);
  } catch (...) {
    std::lock_guard relock(mu_);
    --open_;
    cv_.notify_one();
    throw;
  }
}

void RemoteBackend::release(Socket s) {
  std::lock_guard lock(mu_);
  if (s.valid()) idle_.push_back(std::move(s));
  else --open_;
  cv_.notify_one();
}

EmbedResponse RemoteBackend::embed(const EmbedRequest& req) {
  Socket s = acquire();
  std::string body;
  try {
    s.send_frame(request_to_json(req));
    if (!s.recv_frame(body)) throw BackendUnavailable("server closed the connection");
  } catch (...) {
    release(Socket());
    throw;
  }
  release(std::move(s));
  EmbedResponse resp = response_from_json(body);
  check_response(req, resp);
  return resp;
}

}  // namespace meol::backend
