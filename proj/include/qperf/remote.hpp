// Copyright 2026 The qperf authors
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

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "qperf/backend.hpp"

namespace qperf {

namespace net {

class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(o.fd_), buffer_(std::move(o.buffer_)) {
    o.fd_ = -1;
  }
  Socket& operator=(Socket&& o) noexcept {
    close_fd();
    fd_ = o.fd_;
    buffer_ = std::move(o.buffer_);
    o.fd_ = -1;
    return *this;
  }
  ~Socket() { close_fd(); }

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }

  bool write_line(const std::string& line) {
    std::string payload = line;
    payload += '\n';
    std::size_t sent = 0;
    while (sent < payload.size()) {
      const ssize_t n = ::send(fd_, payload.data() + sent, payload.size() - sent,
                               MSG_NOSIGNAL);
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  }

  bool read_line(std::string& out) {
    while (true) {
      const auto pos = buffer_.find('\n');
      if (pos != std::string::npos) {
        out = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        return true;
      }
      char chunk[4096];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n <= 0) return false;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  void shutdown() {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
  }

 private:
  void close_fd() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }
  int fd_ = -1;
  std::string buffer_;
};

inline Socket connect_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port);
  if (::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res) != 0)
    return Socket();
  Socket out;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      out = Socket(fd);
      break;
    }
    ::close(fd);
  }
  ::freeaddrinfo(res);
  return out;
}

}  // namespace net

/// Serves a backend over newline-delimited JSON on TCP. One thread per
/// connection; the backend itself serializes execution.
class WireServer {
 public:
  WireServer(Backend& backend, const std::string& host, std::uint16_t port)
      : backend_(backend) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw TransportError("cannot create socket");
    const int enable = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &enable, sizeof enable);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
      throw TransportError("bad listen address: " + host);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      ::close(listen_fd_);
      throw TransportError("cannot bind " + host + ":" + std::to_string(port));
    }
    if (::listen(listen_fd_, 64) != 0) {
      ::close(listen_fd_);
      throw TransportError("cannot listen");
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    accept_thread_ = std::thread([this] { accept_loop(); });
  }

  ~WireServer() { stop(); }

  std::uint16_t port() const { return port_; }

  void stop() {
    bool expected = false;
    if (!stopping_.compare_exchange_strong(expected, true)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    {
      std::lock_guard lock(mu_);
      for (auto& [fd, _] : live_) ::shutdown(fd, SHUT_RDWR);
    }
    if (accept_thread_.joinable()) accept_thread_.join();
    std::vector<std::thread> workers;
    {
      std::lock_guard lock(mu_);
      for (auto& [_, t] : live_) workers.push_back(std::move(t));
      live_.clear();
    }
    for (auto& t : workers)
      if (t.joinable()) t.join();
  }

 private:
  void accept_loop() {
    while (!stopping_) {
      const int fd = ::accept(listen_fd_, nullptr, nullptr);
      if (fd < 0) break;
      std::lock_guard lock(mu_);
      live_.emplace(fd, std::thread([this, fd] { serve_connection(fd); }));
    }
  }

  void serve_connection(int fd) {
    net::Socket sock(fd);
    std::string line;
    while (sock.read_line(line)) {
      std::string job_id;
      try {
        const json msg = json::parse(line);
        if (msg.at("type").get<std::string>() != "submit") {
          sock.write_line(
              wire::error_message("", "bad_request", "expected submit").dump());
          continue;
        }
        Job job = wire::parse_submit(msg);
        job_id = job.job_id;
        backend_.submit(std::move(job));
        sock.write_line(wire::ack_message(job_id).dump());
        const JobResult r = backend_.result(job_id);
        sock.write_line(wire::result_message(r).dump());
      } catch (const ValidationError& e) {
        sock.write_line(wire::error_message(job_id, "validation", e.what()).dump());
      } catch (const CapacityError& e) {
        sock.write_line(wire::error_message(job_id, "capacity", e.what()).dump());
      } catch (const ParameterError& e) {
        sock.write_line(wire::error_message(job_id, "parameter", e.what()).dump());
      } catch (const std::exception& e) {
        sock.write_line(wire::error_message(job_id, "internal", e.what()).dump());
      }
    }
  }

  Backend& backend_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread accept_thread_;
  std::mutex mu_;
  std::unordered_map<int, std::thread> live_;
};

/// Client half of the wire protocol. Each job rides its own connection:
/// submit sends and waits for the ack, result blocks on the result line.
/// Connection failures are retried (3 retries, exponential backoff); a job
/// is resubmitted verbatim on retry, which is safe because execution is
/// content-deterministic.
class RemoteBackend final : public Backend {
 public:
  RemoteBackend(std::string host, std::uint16_t port, std::string name,
                QubitId num_qubits)
      : host_(std::move(host)),
        port_(port),
        name_(std::move(name)),
        num_qubits_(num_qubits),
        id_rng_(mix64(0x7e307e30ULL ^ (std::uint64_t(port) << 16))),
        epoch_(std::chrono::steady_clock::now()) {}

  std::string submit(Job job) override {
    std::lock_guard lock(mu_);
    if (job.job_id.empty()) job.job_id = fresh_job_id(id_rng_);
    const std::string id = job.job_id;
    Pending p;
    p.payload = wire::submit_message(job).dump();
    p.attempts_left = kRetries;
    p.socket = send_with_retries(p.payload, p.attempts_left);
    pending_.emplace(id, std::move(p));
    return id;
  }

  JobResult result(const std::string& job_id) override {
    std::unique_lock lock(mu_);
    const auto it = pending_.find(job_id);
    if (it == pending_.end()) throw ParameterError("unknown job id");
    Pending p = std::move(it->second);
    pending_.erase(it);
    lock.unlock();

    std::string line;
    while (!p.socket.read_line(line)) {
      // Connection died before the result arrived: resubmit the identical
      // job on a fresh connection until retries run out.
      p.socket = send_with_retries(p.payload, p.attempts_left);
    }
    const json msg = json::parse(line);
    const auto type = msg.at("type").get<std::string>();
    if (type == "error")
      throw TransportError("backend error [" +
                           msg.value("code", std::string("unknown")) +
                           "]: " + msg.value("message", std::string()));
    if (type != "result") throw TransportError("unexpected message: " + type);
    return wire::parse_result(msg);
  }

  QubitId num_qubits() const override { return num_qubits_; }
  const std::string& name() const override { return name_; }

  double now_seconds() override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         epoch_)
        .count();
  }

  bool has_virtual_clock() const override { return false; }

 private:
  static constexpr int kRetries = 3;

  struct Pending {
    std::string payload;
    net::Socket socket;
    int attempts_left = kRetries;
  };

  /// Connect, send the submit line, wait for the ack. Decrements the retry
  /// budget on each failure and backs off 100ms, 200ms, 400ms.
  net::Socket send_with_retries(const std::string& payload, int& attempts_left) {
    int backoff_ms = 100;
    while (true) {
      net::Socket sock = net::connect_tcp(host_, port_);
      if (sock.valid() && sock.write_line(payload)) {
        std::string line;
        if (sock.read_line(line)) {
          const json msg = json::parse(line);
          const auto type = msg.at("type").get<std::string>();
          if (type == "ack") return sock;
          if (type == "error")
            throw TransportError(
                "backend rejected job [" +
                msg.value("code", std::string("unknown")) +
                "]: " + msg.value("message", std::string()));
        }
      }
      if (attempts_left-- <= 0)
        throw TransportError("cannot reach backend at " + host_ + ":" +
                             std::to_string(port_));
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
  }

  std::string host_;
  std::uint16_t port_;
  std::string name_;
  QubitId num_qubits_;
  SplitMix64 id_rng_;
  std::chrono::steady_clock::time_point epoch_;
  std::mutex mu_;
  std::unordered_map<std::string, Pending> pending_;
};

}  // namespace qperf
