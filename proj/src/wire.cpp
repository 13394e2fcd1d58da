/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/wire.hpp"

#include <random>

namespace pmikit::wire {

using der::Tag;
using der::Value;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ProtocolError(what); }

Value certificate_value(const cert::PublicKeyCertificate& c) {
    return der::decode(cert::encode_certificate(c)).value;
}

Value cert_list_value(uint32_t ctx, const std::vector<cert::PublicKeyCertificate>& certs) {
    std::vector<Value> items;
    items.reserve(certs.size());
    for (const auto& c : certs) items.push_back(certificate_value(c));
    return Value::context(ctx, {Value::sequence(std::move(items))});
}

const Value& unwrap_context(const Value& v, const char* what) {
    if (v.children.size() != 1) bad(std::string(what) + ": expected one wrapped element");
    return v.children[0];
}

std::vector<cert::PublicKeyCertificate> cert_list_from(const Value& wrapper, const char* what) {
    const Value& seq = unwrap_context(wrapper, what);
    if (seq.tag != Tag::universal(der::kTagSequence, true)) bad(std::string(what) + ": not a list");
    std::vector<cert::PublicKeyCertificate> out;
    for (const Value& cv : seq.children) {
        out.push_back(cert::parse_certificate(der::encode(cv)));
    }
    return out;
}

Bytes request_id_from(const Value& v) {
    ByteView octets = v.as_octets();
    if (octets.size() != kRequestIdSize) bad("requestId must be 16 bytes");
    return to_bytes(octets);
}

}  // namespace

Bytes encode_frame(uint8_t msg_type, ByteView payload) {
    if (payload.size() > kMaxPayload) bad("frame payload exceeds 2^24 bytes");
    uint32_t length = static_cast<uint32_t>(2 + payload.size());
    Bytes out;
    out.reserve(4 + length);
    out.push_back(static_cast<uint8_t>(length >> 24));
    out.push_back(static_cast<uint8_t>(length >> 16));
    out.push_back(static_cast<uint8_t>(length >> 8));
    out.push_back(static_cast<uint8_t>(length));
    out.push_back(kFrameVersion);
    out.push_back(msg_type);
    append(out, payload);
    return out;
}

Bytes encode_error_frame(uint8_t reason) {
    Bytes payload{reason};
    return encode_frame(kMsgError, payload);
}

Frame parse_frame_body(ByteView body) {
    if (body.size() < 2) bad("frame body shorter than version and msgType");
    Frame f;
    f.version = body[0];
    f.msg_type = body[1];
    f.payload = to_bytes(body.subspan(2));
    if (f.payload.size() > kMaxPayload) bad("frame payload exceeds 2^24 bytes");
    return f;
}

Bytes fresh_request_id() {
    static thread_local std::mt19937_64 rng{std::random_device{}()};
    Bytes id(kRequestIdSize);
    for (auto& b : id) b = static_cast<uint8_t>(rng());
    return id;
}

Bytes encode_request(const ValidationRequest& req) {
    if (req.request_id.size() != kRequestIdSize) bad("requestId must be 16 bytes");
    std::vector<Value> fields;
    fields.push_back(Value::octet_string(req.request_id));
    fields.push_back(certificate_value(req.target));
    if (req.anchors) fields.push_back(cert_list_value(0, *req.anchors));
    if (req.intermediates) fields.push_back(cert_list_value(1, *req.intermediates));
    if (req.policy_set) {
        std::vector<Value> oids;
        for (const der::Oid& o : *req.policy_set) oids.push_back(Value::oid(o));
        fields.push_back(Value::context(2, {Value::sequence(std::move(oids))}));
    }
    if (req.validation_time) {
        fields.push_back(Value::context(3, {Value::time(*req.validation_time)}));
    }
    return der::encode(Value::sequence(std::move(fields)));
}

ValidationRequest decode_request(ByteView bytes) {
    der::Decoded d = der::decode(bytes);
    if (d.consumed != bytes.size()) bad("request has trailing bytes");
    const Value& seq = d.value;
    if (seq.tag != Tag::universal(der::kTagSequence, true) || seq.children.size() < 2) {
        bad("request must be a SEQUENCE with requestId and target");
    }
    ValidationRequest req;
    req.request_id = request_id_from(seq.children[0]);
    req.target = cert::parse_certificate(der::encode(seq.children[1]));

    uint32_t last_tag = 0;
    bool first_optional = true;
    for (size_t i = 2; i < seq.children.size(); ++i) {
        const Value& v = seq.children[i];
        if (v.tag.cls != der::TagClass::Context) bad("unexpected field in request");
        if (!first_optional && v.tag.number <= last_tag) bad("request fields out of order");
        first_optional = false;
        last_tag = v.tag.number;
        switch (v.tag.number) {
        case 0: req.anchors = cert_list_from(v, "anchors"); break;
        case 1: req.intermediates = cert_list_from(v, "intermediates"); break;
        case 2: {
            const Value& list = unwrap_context(v, "policySet");
            if (list.tag != Tag::universal(der::kTagSequence, true)) bad("policySet: not a list");
            std::vector<der::Oid> oids;
            for (const Value& ov : list.children) oids.push_back(ov.as_oid());
            req.policy_set = std::move(oids);
            break;
        }
        case 3: req.validation_time = unwrap_context(v, "validationTime").as_time(); break;
        default: bad("unknown optional request field");
        }
    }
    return req;
}

Bytes encode_response(const ValidationResponse& resp) {
    if (resp.request_id.size() != kRequestIdSize) bad("requestId must be 16 bytes");
    std::vector<Value> fields;
    fields.push_back(Value::octet_string(resp.request_id));
    fields.push_back(Value::integer(static_cast<int64_t>(resp.status)));
    fields.push_back(Value::integer(static_cast<int64_t>(resp.reason)));
    if (resp.chain) fields.push_back(cert_list_value(0, *resp.chain));
    fields.push_back(Value::time(resp.produced_at));
    fields.push_back(Value::boolean(resp.cached));
    return der::encode(Value::sequence(std::move(fields)));
}

ValidationResponse decode_response(ByteView bytes) {
    der::Decoded d = der::decode(bytes);
    if (d.consumed != bytes.size()) bad("response has trailing bytes");
    const Value& seq = d.value;
    if (seq.tag != Tag::universal(der::kTagSequence, true) ||
        (seq.children.size() != 5 && seq.children.size() != 6)) {
        bad("response must be a SEQUENCE of 5 or 6 fields");
    }
    ValidationResponse resp;
    resp.request_id = request_id_from(seq.children[0]);
    int64_t status = seq.children[1].as_int64();
    if (status < 0 || status > 2) bad("response status out of range");
    resp.status = static_cast<path::PathStatus>(status);
    int64_t reason = seq.children[2].as_int64();
    std::optional<path::ReasonCode> rc = path::reason_code_from_int(static_cast<int>(reason));
    if (!rc) bad("response reason out of range");
    resp.reason = *rc;
    size_t next = 3;
    if (seq.children.size() == 6) {
        resp.chain = cert_list_from(seq.children[next], "chain");
        ++next;
    }
    resp.produced_at = seq.children[next].as_time();
    resp.cached = seq.children[next + 1].as_boolean();
    return resp;
}

SignedEnvelope make_envelope(ByteView body, const cert::Name& signer,
                             const crypto::KeyPair& key) {
    SignedEnvelope env;
    env.body = to_bytes(body);
    env.signer_name = signer;
    env.algorithm = key.algorithm;
    env.signature = crypto::sign(key, body);
    return env;
}

Bytes encode_envelope(const SignedEnvelope& env) {
    return der::encode(Value::sequence({Value::octet_string(env.body),
                                        env.signer_name.to_value(),
                                        Value::sequence({Value::oid(env.algorithm.oid)}),
                                        Value::octet_string(env.signature.bytes)}));
}

SignedEnvelope decode_envelope(ByteView bytes) {
    der::Decoded d = der::decode(bytes);
    if (d.consumed != bytes.size()) bad("envelope has trailing bytes");
    const Value& seq = d.value;
    if (seq.tag != Tag::universal(der::kTagSequence, true) || seq.children.size() != 4) {
        bad("envelope must be a SEQUENCE of 4 fields");
    }
    SignedEnvelope env;
    env.body = to_bytes(seq.children[0].as_octets());
    env.signer_name = cert::Name::from_value(seq.children[1]);
    const Value& alg = seq.children[2];
    if (alg.tag != Tag::universal(der::kTagSequence, true) || alg.children.size() != 1) {
        bad("envelope algorithm malformed");
    }
    env.algorithm = crypto::AlgorithmId{alg.children[0].as_oid()};
    env.signature.algorithm = env.algorithm;
    env.signature.bytes = to_bytes(seq.children[3].as_octets());
    return env;
}

bool envelope_signature_ok(const SignedEnvelope& env, ByteView public_key) {
    try {
        return crypto::verify(public_key, env.algorithm, env.body, env.signature);
    } catch (const crypto::UnrecognizedAlgorithm&) {
        return false;
    }
}

Bytes encode_access_request(const AccessRequest& req) {
    std::vector<Value> fields;
    fields.push_back(Value::utf8(req.resource_id));
    fields.push_back(Value::utf8(req.method));
    fields.push_back(certificate_value(req.client_cert));
    fields.push_back(
        der::decode(cert::encode_attribute_certificate(req.client_ac)).value);
    if (req.presented_at) fields.push_back(Value::context(0, {Value::time(*req.presented_at)}));
    return der::encode(Value::sequence(std::move(fields)));
}

AccessRequest decode_access_request(ByteView bytes) {
    der::Decoded d = der::decode(bytes);
    if (d.consumed != bytes.size()) bad("access request has trailing bytes");
    const Value& seq = d.value;
    if (seq.tag != Tag::universal(der::kTagSequence, true) ||
        (seq.children.size() != 4 && seq.children.size() != 5)) {
        bad("access request must be a SEQUENCE of 4 or 5 fields");
    }
    AccessRequest req;
    req.resource_id = seq.children[0].as_text();
    req.method = seq.children[1].as_text();
    req.client_cert = cert::parse_certificate(der::encode(seq.children[2]));
    req.client_ac = cert::parse_attribute_certificate(der::encode(seq.children[3]));
    if (seq.children.size() == 5) {
        req.presented_at = unwrap_context(seq.children[4], "presentedAt").as_time();
    }
    return req;
}

Bytes encode_access_decision(const AccessDecisionMessage& msg) {
    std::vector<Value> reasons;
    for (const DecisionReason& r : msg.reasons) {
        reasons.push_back(
            Value::sequence({Value::integer(r.code), Value::utf8(r.detail)}));
    }
    return der::encode(Value::sequence({Value::integer(msg.permit ? 0 : 1),
                                        Value::sequence(std::move(reasons)),
                                        Value::time(msg.evaluated_at)}));
}

AccessDecisionMessage decode_access_decision(ByteView bytes) {
    der::Decoded d = der::decode(bytes);
    if (d.consumed != bytes.size()) bad("access decision has trailing bytes");
    const Value& seq = d.value;
    if (seq.tag != Tag::universal(der::kTagSequence, true) || seq.children.size() != 3) {
        bad("access decision must be a SEQUENCE of 3 fields");
    }
    AccessDecisionMessage msg;
    int64_t verdict = seq.children[0].as_int64();
    if (verdict != 0 && verdict != 1) bad("verdict out of range");
    msg.permit = verdict == 0;
    const Value& reasons = seq.children[1];
    if (reasons.tag != Tag::universal(der::kTagSequence, true)) bad("reasons must be a list");
    for (const Value& rv : reasons.children) {
        if (rv.tag != Tag::universal(der::kTagSequence, true) || rv.children.size() != 2) {
            bad("reason entry malformed");
        }
        int64_t code = rv.children[0].as_int64();
        if (code < 0 || code > 255) bad("reason code out of range");
        msg.reasons.push_back({static_cast<int>(code), rv.children[1].as_text()});
    }
    msg.evaluated_at = seq.children[2].as_time();
    return msg;
}

}  // namespace pmikit::wire
