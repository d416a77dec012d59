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

#include "priarta/transport.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <utility>

#include "absl/strings/str_cat.h"
#include "priarta/errors.h"
#include "priarta/logging.h"
#include "priarta/protocol.h"
#include "priarta/status_macros.h"
#include "priarta/strings.h"

namespace priarta {
namespace {

absl::Status ErrnoError(std::string_view what) {
  return MakeError(ErrorCode::kTransport,
                   StrCat(what, ": ", std::strerror(errno)));
}

// Reads exactly n bytes. *got reports how many arrived before a failure.
absl::Status ReadExactly(int fd, char* out, size_t n, size_t* got) {
  *got = 0;
  while (*got < n) {
    const ssize_t r = ::recv(fd, out + *got, n - *got, 0);
    if (r == 0) {
      return MakeError(ErrorCode::kTransport, "connection closed by peer");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      return ErrnoError("recv");
    }
    *got += static_cast<size_t>(r);
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::string> InProcessConnection::Exchange(
    std::string_view frame) {
  return session_.HandleFrame(frame);
}

absl::StatusOr<HostPort> ParseHostPort(std::string_view address) {
  const size_t colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("expected host:port, got '", address, "'"));
  }
  HostPort out;
  out.host = std::string(address.substr(0, colon));
  const std::string_view port = address.substr(colon + 1);
  const auto result =
      std::from_chars(port.data(), port.data() + port.size(), out.port);
  if (result.ec != std::errc() || result.ptr != port.data() + port.size() ||
      out.port < 0 || out.port > 65535) {
    return MakeError(ErrorCode::kInvalidParameter,
                     StrCat("bad port in '", address, "'"));
  }
  return out;
}

absl::Status WriteAll(int fd, std::string_view bytes) {
  size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t w =
        ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      return ErrnoError("send");
    }
    sent += static_cast<size_t>(w);
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFrame(int fd) {
  std::string frame(kFrameHeaderSize, '\0');
  size_t got = 0;
  if (absl::Status s = ReadExactly(fd, frame.data(), kFrameHeaderSize, &got);
      !s.ok()) {
    if (got > 0) {
      return MakeError(ErrorCode::kFrameTruncated, "EOF inside frame header");
    }
    return s;
  }
  PRIARTA_ASSIGN_OR_RETURN(uint32_t n, DecodeFrameLength(frame));
  frame.resize(kFrameHeaderSize + n);
  if (absl::Status s =
          ReadExactly(fd, frame.data() + kFrameHeaderSize, n, &got);
      !s.ok()) {
    return MakeError(ErrorCode::kFrameTruncated,
                     StrCat("EOF after ", got, " of ", n, " payload bytes"));
  }
  return frame;
}

absl::StatusOr<std::unique_ptr<TcpConnection>> TcpConnection::Connect(
    std::string_view address, int timeout_ms) {
  PRIARTA_ASSIGN_OR_RETURN(HostPort hp, ParseHostPort(address));
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  const std::string port = std::to_string(hp.port);
  if (int rc = ::getaddrinfo(hp.host.c_str(), port.c_str(), &hints, &found);
      rc != 0) {
    return MakeError(ErrorCode::kTransport, StrCat("cannot resolve ", hp.host,
                                                   ": ", gai_strerror(rc)));
  }
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) {
    ::freeaddrinfo(found);
    return ErrnoError("socket");
  }
  timeval tv{timeout_ms / 1000, (timeout_ms % 1000) * 1000};
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  const int rc = ::connect(fd, found->ai_addr, found->ai_addrlen);
  ::freeaddrinfo(found);
  if (rc != 0) {
    absl::Status status = ErrnoError(StrCat("connect ", address));
    ::close(fd);
    return status;
  }
  return std::unique_ptr<TcpConnection>(new TcpConnection(fd));
}

TcpConnection::~TcpConnection() {
  if (fd_ >= 0) ::close(fd_);
}

absl::StatusOr<std::string> TcpConnection::Exchange(std::string_view frame) {
  PRIARTA_RETURN_IF_ERROR(WriteAll(fd_, frame));
  return ReadFrame(fd_);
}

absl::StatusOr<std::unique_ptr<SellerServer>> SellerServer::Start(
    SellerNode& node, std::string_view listen_address) {
  PRIARTA_ASSIGN_OR_RETURN(HostPort hp, ParseHostPort(listen_address));
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) return ErrnoError("socket");
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(hp.port));
  const std::string host = hp.host == "localhost" ? "127.0.0.1" : hp.host;
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd);
    return MakeError(
        ErrorCode::kInvalidParameter,
        StrCat("listen host must be an IPv4 address, got ", hp.host));
  }
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd, 64) != 0) {
    absl::Status status = ErrnoError(StrCat("bind ", listen_address));
    ::close(fd);
    return status;
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  std::unique_ptr<SellerServer> server(
      new SellerServer(node, fd, ntohs(addr.sin_port)));
  server->accept_thread_ = std::thread([s = server.get()] { s->AcceptLoop(); });
  return server;
}

SellerServer::~SellerServer() { Stop(); }

void SellerServer::Stop() {
  if (stopping_.exchange(true)) return;
  if (accept_thread_.joinable()) accept_thread_.join();
  ::close(listen_fd_);
  std::vector<std::thread> workers;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (int fd : open_fds_) ::shutdown(fd, SHUT_RDWR);
    workers.swap(workers_);
  }
  for (std::thread& t : workers) t.join();
}

void SellerServer::AcceptLoop() {
  while (!stopping_.load()) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 50);
    if (ready <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    std::lock_guard<std::mutex> lock(mu_);
    if (stopping_.load()) {
      ::close(fd);
      break;
    }
    open_fds_.insert(fd);
    workers_.emplace_back([this, fd] { ServeConnection(fd); });
  }
}

void SellerServer::ServeConnection(int fd) {
  SellerSession session = node_.OpenSession();
  int frames = 0;
  while (true) {
    auto frame = ReadFrame(fd);
    if (!frame.ok()) {
      const ErrorCode code = GetErrorCode(frame.status());
      if (code == ErrorCode::kFrameTooLarge ||
          code == ErrorCode::kFrameTruncated) {
        // The stream cannot be resynchronized; report and hang up.
        (void)WriteAll(fd, EncodeFrame(ErrorFromStatus(frame.status(), "")));
      }
      PRIARTA_LOG(kInfo) << "seller " << node_.node_id()
                         << " connection closed after " << frames
                         << " frames: " << frame.status().message();
      break;
    }
    ++frames;
    if (!WriteAll(fd, session.HandleFrame(*frame)).ok()) break;
  }
  std::lock_guard<std::mutex> lock(mu_);
  open_fds_.erase(fd);
  ::close(fd);
}

absl::StatusOr<std::unique_ptr<SellerConnection>> Connect(
    const SellerEndpoint& endpoint) {
  if (auto* const* node = std::get_if<SellerNode*>(&endpoint.target)) {
    if (*node == nullptr) {
      return MakeError(ErrorCode::kTransport, "null in-process seller");
    }
    return std::unique_ptr<SellerConnection>(
        std::make_unique<InProcessConnection>(**node));
  }
  PRIARTA_ASSIGN_OR_RETURN(
      std::unique_ptr<TcpConnection> tcp,
      TcpConnection::Connect(std::get<std::string>(endpoint.target)));
  return std::unique_ptr<SellerConnection>(std::move(tcp));
}

}  // namespace priarta
