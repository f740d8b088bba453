// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/runtime/session_engine.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <list>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace beatline::runtime {

class ServerError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class AddressInUse : public ServerError {
  public:
    explicit AddressInUse(const std::string& address) : ServerError("address already in use: " + address) {}
};

struct ListenAddress {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;  // 0: pick a free port
};

/// "host:port" or ":port". Throws std::invalid_argument.
[[nodiscard]] ListenAddress parse_listen_address(std::string_view text);

struct ServerOptions {
    ListenAddress listen;
    std::filesystem::path log_dir = ".";
    std::size_t max_line_bytes = 1 << 20;
    /// Prefix for session ids; defaults to the server start time.
    std::string session_prefix;
};

/// TCP session service, one thread per connection. Each connection is one
/// session speaking the line protocol. A session ends on "end", on story
/// completion, or on disconnect; its transcript is then written next to its
/// logs.
class Server {
  public:
    Server(ServerOptions options, EngineContext context);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds and starts accepting. Throws AddressInUse or ServerError.
    void start();
    /// Stops accepting, disconnects every client and joins all threads.
    void stop();
    /// Blocks until stop() is called from another thread.
    void wait();

    [[nodiscard]] std::uint16_t port() const noexcept { return port_; }
    [[nodiscard]] std::size_t sessions_opened() const noexcept { return sessions_opened_.load(); }

  private:
    struct Connection {
        int fd = -1;
        std::thread thread;
        std::atomic<bool> done{false};
    };

    void accept_loop();
    void serve_connection(Connection& conn, std::string session_id);
    void reap(bool all);

    ServerOptions options_;
    EngineContext context_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::atomic<std::size_t> sessions_opened_{0};
    std::thread acceptor_;
    std::mutex mutex_;
    std::list<Connection> connections_;
    std::mutex wait_mutex_;
    std::condition_variable wait_cv_;
    bool stopped_ = false;
};

} // namespace beatline::runtime
