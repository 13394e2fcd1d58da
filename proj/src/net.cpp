/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/net.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "pmikit/wire.hpp"

namespace pmikit::net {

namespace {

[[noreturn]] void sys_fail(const std::string& what) {
    throw NetError(what + ": " + std::strerror(errno));
}

void wait_ready(int fd, short events, int timeout_ms, const char* what) {
    pollfd pfd{fd, events, 0};
    int rc = ::poll(&pfd, 1, timeout_ms);
    if (rc == 0) throw NetError(std::string(what) + ": timeout");
    if (rc < 0) sys_fail(what);
}

sockaddr_in make_addr(const std::string& host, uint16_t port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        throw NetError("not an IPv4 address: " + host);
    }
    return addr;
}

}  // namespace

TcpConn& TcpConn::operator=(TcpConn&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

TcpConn::~TcpConn() { close(); }

void TcpConn::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

std::optional<Bytes> TcpConn::read_exact(size_t n, int timeout_ms) {
    Bytes out(n);
    size_t got = 0;
    while (got < n) {
        wait_ready(fd_, POLLIN, timeout_ms, "read");
        ssize_t rc = ::recv(fd_, out.data() + got, n - got, 0);
        if (rc == 0) {
            if (got == 0) return std::nullopt;
            throw NetError("connection closed mid-message");
        }
        if (rc < 0) {
            if (errno == EINTR) continue;
            sys_fail("read");
        }
        got += static_cast<size_t>(rc);
    }
    return out;
}

void TcpConn::write_all(ByteView data, int timeout_ms) {
    size_t sent = 0;
    while (sent < data.size()) {
        wait_ready(fd_, POLLOUT, timeout_ms, "write");
        ssize_t rc = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (rc < 0) {
            if (errno == EINTR) continue;
            sys_fail("write");
        }
        sent += static_cast<size_t>(rc);
    }
}

TcpListener TcpListener::bind_and_listen(const std::string& host, uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) sys_fail("socket");
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr = make_addr(host, port);
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(fd);
        sys_fail("bind");
    }
    if (::listen(fd, 64) < 0) {
        ::close(fd);
        sys_fail("listen");
    }
    socklen_t len = sizeof(addr);
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) < 0) {
        ::close(fd);
        sys_fail("getsockname");
    }
    TcpListener listener;
    listener.fd_ = fd;
    listener.port_ = ntohs(addr.sin_port);
    return listener;
}

TcpListener::TcpListener(TcpListener&& other) noexcept : fd_(other.fd_), port_(other.port_) {
    other.fd_ = -1;
}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        port_ = other.port_;
        other.fd_ = -1;
    }
    return *this;
}

TcpListener::~TcpListener() { close(); }

void TcpListener::close() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
}

std::optional<TcpConn> TcpListener::accept_one() {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) return std::nullopt;
    return TcpConn(fd);
}

std::optional<TcpConn> connect_to(const std::string& host, uint16_t port, int timeout_ms) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) return std::nullopt;
    int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);

    sockaddr_in addr;
    try {
        addr = make_addr(host, port);
    } catch (const NetError&) {
        ::close(fd);
        return std::nullopt;
    }
    int rc = ::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
    if (rc < 0 && errno != EINPROGRESS) {
        ::close(fd);
        return std::nullopt;
    }
    if (rc < 0) {
        pollfd pfd{fd, POLLOUT, 0};
        if (::poll(&pfd, 1, timeout_ms) <= 0) {
            ::close(fd);
            return std::nullopt;
        }
        int err = 0;
        socklen_t len = sizeof(err);
        if (::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len) < 0 || err != 0) {
            ::close(fd);
            return std::nullopt;
        }
    }
    ::fcntl(fd, F_SETFL, flags);
    return TcpConn(fd);
}

std::optional<Bytes> read_frame_body(TcpConn& conn, int timeout_ms) {
    std::optional<Bytes> prefix = conn.read_exact(4, timeout_ms);
    if (!prefix) return std::nullopt;
    uint32_t length = (uint32_t((*prefix)[0]) << 24) | (uint32_t((*prefix)[1]) << 16) |
                      (uint32_t((*prefix)[2]) << 8) | uint32_t((*prefix)[3]);
    if (length < 2 || length > 2 + wire::kMaxPayload) {
        throw wire::ProtocolError("frame length out of bounds: " + std::to_string(length));
    }
    std::optional<Bytes> body = conn.read_exact(length, timeout_ms);
    if (!body) throw NetError("connection closed before frame body");
    return body;
}

void write_frame(TcpConn& conn, ByteView full_frame, int timeout_ms) {
    conn.write_all(full_frame, timeout_ms);
}

}  // namespace pmikit::net
