/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_NET_HPP_
#define PMIKIT_NET_HPP_

#include <optional>
#include <string>

#include "pmikit/bytes.hpp"

namespace pmikit::net {

class NetError : public std::runtime_error {
public:
    explicit NetError(const std::string& what) : std::runtime_error(what) {}
};

// Thin RAII wrapper over a connected TCP socket.
class TcpConn {
public:
    TcpConn() = default;
    explicit TcpConn(int fd) : fd_(fd) {}
    TcpConn(TcpConn&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    TcpConn& operator=(TcpConn&& other) noexcept;
    TcpConn(const TcpConn&) = delete;
    TcpConn& operator=(const TcpConn&) = delete;
    ~TcpConn();

    bool open() const { return fd_ >= 0; }
    void close();

    // Reads exactly n bytes. nullopt on clean EOF before the first byte;
    // throws NetError on timeout, mid-read EOF, or socket failure.
    std::optional<Bytes> read_exact(size_t n, int timeout_ms);
    void write_all(ByteView data, int timeout_ms);

private:
    int fd_ = -1;
};

class TcpListener {
public:
    // host is a dotted IPv4 address; port 0 picks an ephemeral port.
    static TcpListener bind_and_listen(const std::string& host, uint16_t port);

    TcpListener() = default;
    TcpListener(TcpListener&& other) noexcept;
    TcpListener& operator=(TcpListener&& other) noexcept;
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;
    ~TcpListener();

    uint16_t port() const { return port_; }
    bool open() const { return fd_ >= 0; }

    // nullopt once the listener has been closed (or on transient failure).
    std::optional<TcpConn> accept_one();
    void close();

private:
    int fd_ = -1;
    uint16_t port_ = 0;
};

std::optional<TcpConn> connect_to(const std::string& host, uint16_t port, int timeout_ms);

// Framed message IO: u32 big-endian length prefix, then the frame body.
// Returns nullopt on clean EOF; throws NetError / ProtocolError otherwise.
std::optional<Bytes> read_frame_body(TcpConn& conn, int timeout_ms);
void write_frame(TcpConn& conn, ByteView full_frame, int timeout_ms);

}  // namespace pmikit::net

#endif  // PMIKIT_NET_HPP_
