// Copyright 2026 The PriArTa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Frame transports between buyer and seller. Both carry complete frames, so
// everything above this seam (framing, sessions, orchestration) is shared.

#ifndef PRIARTA_TRANSPORT_H_
#define PRIARTA_TRANSPORT_H_

#include <atomic>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "priarta/seller.h"

namespace priarta {

class SellerConnection {
 public:
  virtual ~SellerConnection() = default;
  // Sends one request frame and returns the reply frame.
  virtual absl::StatusOr<std::string> Exchange(std::string_view frame) = 0;
};

class InProcessConnection : public SellerConnection {
 public:
  explicit InProcessConnection(SellerNode& node)
      : session_(node.OpenSession()) {}
  absl::StatusOr<std::string> Exchange(std::string_view frame) override;

 private:
  SellerSession session_;
};

struct HostPort {
  std::string host;
  int port = 0;
};

// Parses "host:port" (port 0..65535).
absl::StatusOr<HostPort> ParseHostPort(std::string_view address);

class TcpConnection : public SellerConnection {
 public:
  static absl::StatusOr<std::unique_ptr<TcpConnection>> Connect(
      std::string_view address, int timeout_ms = 30000);
  ~TcpConnection() override;

  absl::StatusOr<std::string> Exchange(std::string_view frame) override;

 private:
  explicit TcpConnection(int fd) : fd_(fd) {}
  int fd_;
};

// Reads one complete frame (header + payload) from a socket. Returns
// FRAME_TRUNCATED on EOF mid-frame and TRANSPORT on EOF at a frame boundary.
absl::StatusOr<std::string> ReadFrame(int fd);
absl::Status WriteAll(int fd, std::string_view bytes);

// Serves one SellerNode over TCP: one thread per connection, one session per
// connection. Malformed frames get ERROR replies; the server stays up.
class SellerServer {
 public:
  static absl::StatusOr<std::unique_ptr<SellerServer>> Start(
      SellerNode& node, std::string_view listen_address);
  ~SellerServer();

  int port() const { return port_; }
  void Stop();

 private:
  SellerServer(SellerNode& node, int listen_fd, int port)
      : node_(node), listen_fd_(listen_fd), port_(port) {}
  void AcceptLoop();
  void ServeConnection(int fd);

  SellerNode& node_;
  int listen_fd_;
  int port_;
  std::atomic<bool> stopping_{false};
  std::thread accept_thread_;
  std::mutex mu_;
  std::set<int> open_fds_;
  std::vector<std::thread> workers_;
};

// Where a seller lives: an in-process node or a "host:port" address.
struct SellerEndpoint {
  std::string node_id;
  std::variant<SellerNode*, std::string> target;
};

absl::StatusOr<std::unique_ptr<SellerConnection>> Connect(
    const SellerEndpoint& endpoint);

}  // namespace priarta

#endif  // PRIARTA_TRANSPORT_H_
