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

#include <condition_variable>
#include <mutex>
#include <vector>

#include "meol/backend/backend.hpp"
#include "meol/backend/transport.hpp"

namespace meol::backend {

/// Client for a server speaking the framed protocol. Keeps at most
/// `pool_cap` connections; callers beyond that wait for a free one.
class RemoteBackend : public Backend {
 public:
  RemoteBackend(Address addr, std::size_t pool_cap = 4);

  EmbedResponse embed(const EmbedRequest& req) override;
  std::string name() const override { return "remote:" + addr_.to_string(); }

 private:
  Socket acquire();
  void release(Socket s);

  Address addr_;
  std::size_t cap_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<Socket> idle_;
  std::size_t open_ = 0;
};

}  // namespace meol::backend
