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

#include <gtest/gtest.h>

#include <sys/socket.h>

#include <chrono>
#include <cstdlib>
#include <thread>

#include "meol/backend/remote.hpp"
#include "meol/backend/transport.hpp"
#include "meol/error.hpp"
#include "test_support.hpp"

namespace meol::backend {
namespace {

EmbedRequest req(std::string text, std::string id) {
  EmbedRequest r;
  r.text = std::move(text);
  r.request_id = std::move(id);
  return r;
}

TEST(Address, Parse) {
  auto a = Address::parse("127.0.0.1:7878");
  EXPECT_EQ(a.kind, Address::Kind::Tcp);
  EXPECT_EQ(a.host, "127.0.0.1");
  EXPECT_EQ(a.port, 7878);
  EXPECT_EQ(a.to_string(), "127.0.0.1:7878");
  auto u = Address::parse("unix:/tmp/x.sock");
  EXPECT_EQ(u.kind, Address::Kind::Unix);
  EXPECT_EQ(u.path, "/tmp/x.sock");
  EXPECT_EQ(u.to_string(), "unix:/tmp/x.sock");
  EXPECT_THROW(Address::parse("nohost"), ConfigError);
  EXPECT_THROW(Address::parse("h:99999"), ConfigError);
  EXPECT_THROW(Address::parse("unix:"), ConfigError);
}

TEST(Address, DefaultFromEnvironment) {
  ::unsetenv("META_EMBED_ADDR");
  EXPECT_EQ(default_address(), "127.0.0.1:7878");
  ::setenv("META_EMBED_ADDR", "unix:/run/m.sock", 1);
  EXPECT_EQ(default_address(), "unix:/run/m.sock");
  ::unsetenv("META_EMBED_ADDR");
}

// The server counts a request once its reply is on the wire, which can be
// just after the client has read it.
void wait_for_served(const MockServer& server, std::uint64_t n) {
  for (int i = 0; i < 200 && server.requests_served() < n; ++i)
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
}

void round_trip(const Address& listen_on) {
  MockServer server(listen_on, std::make_shared<MockSemanticBackend>());
  server.start();
  RemoteBackend client(server.address(), 2);
  auto r = req("a remote request", "id-1");
  auto got = client.embed(r);
  EXPECT_EQ(got, mock_semantic_embed(r));
  wait_for_served(server, 1);
  EXPECT_EQ(server.requests_served(), 1u);
}

TEST(Transport, TcpRoundTripOnEphemeralPort) {
  Address a = Address::parse("127.0.0.1:0");
  round_trip(a);
}

TEST(Transport, UnixRoundTrip) {
  testing::TempDir dir;
  round_trip(Address::parse("unix:" + (dir / "m.sock").string()));
}

TEST(Transport, ServerErrorsReachTheClient) {
  MockServer server(Address::parse("127.0.0.1:0"), std::make_shared<MockHashBackend>());
  server.start();
  RemoteBackend client(server.address());
  auto r = req("x", "bad");
  r.layer_offset = 40;
  EXPECT_THROW(client.embed(r), BackendRejected);
  // the connection is still usable afterwards
  EXPECT_EQ(client.embed(req("x", "ok")), mock_hash_embed(req("x", "ok")));
}

TEST(Transport, ConcurrentClientsShareAPool) {
  MockServer server(Address::parse("127.0.0.1:0"), std::make_shared<MockHashBackend>());
  server.start();
  RemoteBackend client(server.address(), 2);
  std::vector<std::thread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 6; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 20; ++i) {
        auto r = req("t" + std::to_string(t) + "-" + std::to_string(i), std::to_string(t * 100 + i));
        if (client.embed(r) != mock_hash_embed(r)) ++mismatches;
      }
    });
  for (auto& th : threads) th.join();
  EXPECT_EQ(mismatches.load(), 0);
  wait_for_served(server, 120);
  EXPECT_EQ(server.requests_served(), 120u);
}

TEST(Transport, UnreachableServer) {
  MockServer server(Address::parse("127.0.0.1:0"), std::make_shared<MockHashBackend>());
  server.start();
  Address dead = server.address();
  server.stop();
  RemoteBackend client(dead);
  EXPECT_THROW(client.embed(req("x", "1")), BackendUnavailable);
}

TEST(Transport, OversizeFrameIsRefused) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  Socket a(fds[0]), b(fds[1]);
  const char header[4] = {'\x7f', '\0', '\0', '\0'};
  ASSERT_EQ(::send(a.fd(), header, 4, 0), 4);
  std::string body;
  EXPECT_THROW(b.recv_frame(body), ProtocolError);
}

TEST(Transport, FramesSurviveSocketPair) {
  int fds[2];
  ASSERT_EQ(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds), 0);
  Socket a(fds[0]), b(fds[1]);
  std::string big(1 << 20, 'q');
  std::thread writer([&] { a.send_frame(big); a.send_frame(""); });
  std::string got;
  ASSERT_TRUE(b.recv_frame(got));
  EXPECT_EQ(got, big);
  ASSERT_TRUE(b.recv_frame(got));
  EXPECT_EQ(got, "");
  writer.join();
  a = Socket();
  EXPECT_FALSE(b.recv_frame(got));
}

}  // namespace
}  // namespace meol::backend
