/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_WIRE_HPP_
#define PMIKIT_WIRE_HPP_

#include <optional>

#include "pmikit/path.hpp"

namespace pmikit::wire {

class ProtocolError : public std::runtime_error {
public:
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

class EnvelopeSignatureInvalid : public std::runtime_error {
public:
    explicit EnvelopeSignatureInvalid(const std::string& what) : std::runtime_error(what) {}
};

// Frame layout: u32 big-endian length, then version, msgType, payload.
// length = 2 + |payload|, payload at most 2^24 bytes.
inline constexpr uint8_t kFrameVersion = 0x01;
inline constexpr uint8_t kMsgValidationRequest = 0x01;
inline constexpr uint8_t kMsgValidationResponse = 0x02;
inline constexpr uint8_t kMsgAccessRequest = 0x11;
inline constexpr uint8_t kMsgAccessDecision = 0x12;
inline constexpr uint8_t kMsgError = 0x7F;

inline constexpr size_t kMaxPayload = size_t{1} << 24;

// Error-frame reason bytes.
inline constexpr uint8_t kErrBadFrame = 0x01;
inline constexpr uint8_t kErrDecode = 0x02;
inline constexpr uint8_t kErrEnvelope = 0x03;
inline constexpr uint8_t kErrVersion = 0x04;
inline constexpr uint8_t kErrMsgType = 0x05;
inline constexpr uint8_t kErrInternal = 0x06;

struct Frame {
    uint8_t version = kFrameVersion;
    uint8_t msg_type = 0;
    Bytes payload;
};

// Full wire bytes including the length prefix.
Bytes encode_frame(uint8_t msg_type, ByteView payload);
Bytes encode_error_frame(uint8_t reason);

// Parses the length-covered body (version, msgType, payload).
Frame parse_frame_body(ByteView body);

inline constexpr size_t kRequestIdSize = 16;

Bytes fresh_request_id();

struct ValidationRequest {
    Bytes request_id;  // 16 bytes, unique per client session
    cert::PublicKeyCertificate target;
    std::optional<std::vector<cert::PublicKeyCertificate>> anchors;  // self-signed
    std::optional<std::vector<cert::PublicKeyCertificate>> intermediates;
    std::optional<std::vector<der::Oid>> policy_set;
    std::optional<der::Time> validation_time;
};

struct ValidationResponse {
    Bytes request_id;  // echo of the request
    path::PathStatus status = path::PathStatus::Unknown;
    path::ReasonCode reason = path::ReasonCode::NoPath;
    std::optional<std::vector<cert::PublicKeyCertificate>> chain;
    der::Time produced_at;
    bool cached = false;
};

Bytes encode_request(const ValidationRequest& req);
ValidationRequest decode_request(ByteView bytes);

Bytes encode_response(const ValidationResponse& resp);
ValidationResponse decode_response(ByteView bytes);

// Message-level authentication: the body is signed by a named peer. Response
// envelopes are always signed; request signature enforcement is the
// receiver's policy.
struct SignedEnvelope {
    Bytes body;
    cert::Name signer_name;
    crypto::AlgorithmId algorithm;
    crypto::Signature signature;
};

SignedEnvelope make_envelope(ByteView body, const cert::Name& signer,
                             const crypto::KeyPair& key);
Bytes encode_envelope(const SignedEnvelope& env);
SignedEnvelope decode_envelope(ByteView bytes);
bool envelope_signature_ok(const SignedEnvelope& env, ByteView public_key);

// Gateway message bodies share the frame and envelope machinery.
struct AccessRequest {
    std::string resource_id;
    std::string method;
    cert::PublicKeyCertificate client_cert;
    cert::AttributeCertificate client_ac;
    std::optional<der::Time> presented_at;
};

struct DecisionReason {
    int code = 0;
    std::string detail;

    bool operator==(const DecisionReason&) const = default;
};

struct AccessDecisionMessage {
    bool permit = false;
    std::vector<DecisionReason> reasons;
    der::Time evaluated_at;
};

Bytes encode_access_request(const AccessRequest& req);
AccessRequest decode_access_request(ByteView bytes);

Bytes encode_access_decision(const AccessDecisionMessage& msg);
AccessDecisionMessage decode_access_decision(ByteView bytes);

}  // namespace pmikit::wire

#endif  // PMIKIT_WIRE_HPP_
