/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_CVS_HPP_
#define PMIKIT_CVS_HPP_

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "pmikit/net.hpp"
#include "pmikit/wire.hpp"

namespace pmikit::cvs {

struct ServerConfig {
    std::string listen_host = "127.0.0.1";
    uint16_t listen_port = 0;  // 0 picks an ephemeral port
    cert::Name identity;
    crypto::KeyPair key;
    bool cache_enabled = false;
    path::RevocationMode revocation_mode = path::RevocationMode::HardFail;
    size_t max_path_length = path::kDefaultMaxPathLength;
    int io_timeout_ms = 10000;
    ClockPtr clock;  // system clock when unset
    // When non-empty, request envelopes must verify against one of these.
    std::vector<std::pair<cert::Name, Bytes>> peer_keys;
};

// Verdict cache keyed on (target, anchors, policy set, validationTime). An
// entry expires with the earliest nextUpdate of the CRLs its verdict
// consulted; expired entries are never served.
class ResponseCache {
public:
    struct Entry {
        wire::ValidationResponse response;
        std::optional<der::Time> expiry;
    };

    std::optional<wire::ValidationResponse> lookup(const Bytes& key, const der::Time& now);
    void insert(const Bytes& key, Entry entry);  // last writer wins
    size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<Bytes, Entry> entries_;
};

Bytes cache_key(const wire::ValidationRequest& req);

class CvsServer {
public:
    CvsServer(ServerConfig config, cert::CertStore store);
    ~CvsServer();

    CvsServer(const CvsServer&) = delete;
    CvsServer& operator=(const CvsServer&) = delete;

    void start();
    void stop();
    uint16_t port() const { return port_; }

    struct FrameResult {
        Bytes frame;        // full response frame, ready to send
        bool disconnect = false;
    };

    // One frame body in, one frame out; never throws. Exposed so the fuzz
    // suites can hammer the processing path without sockets.
    FrameResult handle_frame_body(ByteView body);

private:
    wire::ValidationResponse process(const wire::ValidationRequest& req);
    void accept_loop();
    void serve_connection(net::TcpConn conn);

    ServerConfig config_;
    cert::CertStore store_;
    cert::TrustAnchorSet default_anchors_;
    ResponseCache cache_;
    net::TcpListener listener_;
    std::thread accept_thread_;
    std::mutex workers_mutex_;
    std::vector<std::thread> workers_;
    std::atomic<bool> running_{false};
    uint16_t port_ = 0;
};

struct ClientConfig {
    std::string host = "127.0.0.1";
    uint16_t port = 0;
    cert::Name cvs_name;    // expected responder identity
    Bytes cvs_public_key;   // response envelopes must verify against this
    cert::Name client_name;
    crypto::KeyPair client_key;
    int timeout_ms = 5000;
};

struct RemoteQuery {
    std::optional<std::vector<cert::PublicKeyCertificate>> anchors;
    std::optional<std::vector<cert::PublicKeyCertificate>> intermediates;
    std::optional<std::vector<der::Oid>> policy_set;
    std::optional<der::Time> validation_time;
};

struct RemoteOutcome {
    path::PathValidationResult result;
    std::optional<wire::ValidationResponse> response;   // protocol-level reply
    std::optional<std::string> transport_error;         // set when failing closed
};

// Sends a signed validation request and maps the reply onto a
// PathValidationResult. Every transport or envelope failure yields
// status UNKNOWN — never VALID.
RemoteOutcome validate_remote(const ClientConfig& config,
                              const cert::PublicKeyCertificate& target,
                              const RemoteQuery& query = {});

}  // namespace pmikit::cvs

#endif  // PMIKIT_CVS_HPP_
