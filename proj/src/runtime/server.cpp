// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/server.hpp"

#include <fmt/format.h>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>
#include <fstream>

namespace beatline::runtime {

namespace {

bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        const auto n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        data.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

bool send_lines(int fd, const std::vector<std::string>& lines) {
    std::string buf;
    for (const auto& l : lines) {
        buf += l;
        buf += '\n';
    }
    return send_all(fd, buf);
}

} // namespace

ListenAddress parse_listen_address(std::string_view text) {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) {
        throw ServerError("listen address must be host:port, got '" + std::string(text) + "'");
    }
    ListenAddress addr;
    const auto host = text.substr(0, colon);
    if (!host.empty()) {
        addr.host = std::string(host);
    }
    const auto port = text.substr(colon + 1);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
    if (ec != std::errc{} || ptr != port.data() + port.size() || value > 65535) {
        throw ServerError("bad port '" + std::string(port) + "'");
    }
    addr.port = static_cast<std::uint16_t>(value);
    return addr;
}

Server::Server(ServerOptions options, EngineContext context)
    : options_(std::move(options)), context_(std::move(context)) {
    if (options_.session_prefix.empty()) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        options_.session_prefix = fmt::format("s{}", std::chrono::duration_cast<std::chrono::seconds>(now).count());
    }
}

Server::~Server() { stop(); }

void Server::start() {
    std::filesystem::create_directories(options_.log_dir);

    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    const auto port_str = std::to_string(options_.listen.port);
    if (const int rc = ::getaddrinfo(options_.listen.host.c_str(), port_str.c_str(), &hints, &res); rc != 0) {
        throw ServerError("cannot resolve " + options_.listen.host + ": " + ::gai_strerror(rc));
    }
    const auto address = options_.listen.host + ":" + port_str;
    int fd = -1;
    int last_errno = 0;
    for (auto* ai = res; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
        if (fd < 0) {
            last_errno = errno;
            continue;
        }
        const int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
            break;
        }
        last_errno = errno;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) {
        if (last_errno == EADDRINUSE) {
            throw AddressInUse(address);
        }
        throw ServerError("cannot listen on " + address + ": " + std::strerror(last_errno));
    }

    sockaddr_storage bound{};
    socklen_t len = sizeof bound;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
    port_ = ntohs(bound.ss_family == AF_INET6 ? reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port
                                              : reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
    listen_fd_ = fd;
    acceptor_ = std::thread([this] { accept_loop(); });
}

void Server::accept_loop() {
    while (!stopping_) {
        pollfd pfd{listen_fd_, POLLIN, 0};
        const int rc = ::poll(&pfd, 1, 100);
        reap(false);
        if (rc <= 0) {
            continue;
        }
        const int client = ::accept4(listen_fd_, nullptr, nullptr, SOCK_CLOEXEC);
        if (client < 0) {
            continue;
        }
        const auto n = ++sessions_opened_;
        auto session_id = fmt::format("{}-{:04d}", options_.session_prefix, n);
        std::lock_guard lock(mutex_);
        if (stopping_) {
            ::close(client);
            break;
        }
        auto& conn = connections_.emplace_back();
        conn.fd = client;
        conn.thread = std::thread([this, &conn, id = std::move(session_id)]() mutable {
            serve_connection(conn, std::move(id));
        });
    }
}

void Server::serve_connection(Connection& conn, std::string session_id) {
    const auto dir = options_.log_dir;
    std::unique_ptr<SessionEngine> engine;
    try {
        engine = std::make_unique<SessionEngine>(session_id, context_,
                                                 std::make_shared<FileSink>(dir / (session_id + ".segments")),
                                                 std::make_shared<FileSink>(dir / (session_id + ".turns")));
    } catch (const std::exception& e) {
        send_lines(conn.fd, {error_message(error_code::kInternal, e.what())});
        ::shutdown(conn.fd, SHUT_RDWR);
        conn.done = true;
        return;
    }

    std::string buffer;
    char chunk[4096];
    bool open = true;
    while (open && !engine->finished()) {
        const auto n = ::recv(conn.fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));

        std::size_t start = 0;
        for (auto nl = buffer.find('\n', start); nl != std::string::npos; nl = buffer.find('\n', start)) {
            std::string_view line(buffer.data() + start, nl - start);
            start = nl + 1;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty()) continue;
            if (!send_lines(conn.fd, engine->handle_line(line))) {
                open = false;
                break;
            }
            if (engine->finished()) break;
        }
        buffer.erase(0, start);
        if (buffer.size() > options_.max_line_bytes) {
            send_lines(conn.fd, {error_message(error_code::kBadMessage, "line too long")});
            open = false;
        }
    }

    engine->disconnect();
    std::ofstream(dir / (session_id + ".transcript"), std::ios::binary) << engine->transcript().render();
    ::shutdown(conn.fd, SHUT_RDWR);
    conn.done = true;
}

void Server::reap(bool all) {
    std::list<Connection> finished;
    {
        std::lock_guard lock(mutex_);
        for (auto it = connections_.begin(); it != connections_.end();) {
            if (all || it->done) {
                auto next = std::next(it);
                finished.splice(finished.end(), connections_, it);
                it = next;
            } else {
                ++it;
            }
        }
    }
    for (auto& c : finished) {
        if (c.thread.joinable()) c.thread.join();
        ::close(c.fd);
    }
}

void Server::stop() {
    if (stopping_.exchange(true)) {
        return;
    }
    if (acceptor_.joinable()) {
        acceptor_.join();
    }
    {
        std::lock_guard lock(mutex_);
        for (auto& c : connections_) {
            ::shutdown(c.fd, SHUT_RDWR);
        }
    }
    reap(true);
    if (listen_fd_ >= 0) {
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
    {
        std::lock_guard lock(wait_mutex_);
        stopped_ = true;
    }
    wait_cv_.notify_all();
}

void Server::wait() {
    std::unique_lock lock(wait_mutex_);
    wait_cv_.wait(lock, [this] { return stopped_; });
}

} // namespace beatline::runtime
