/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/path.hpp"

#include <algorithm>
#include <set>

namespace pmikit::path {

using cert::CertStore;
using cert::PublicKeyCertificate;
using cert::RevocationList;
using cert::TrustAnchor;
using cert::TrustAnchorSet;
using der::Time;

const char* reason_code_name(ReasonCode code) {
    switch (code) {
    case ReasonCode::Ok: return "OK";
    case ReasonCode::NoPath: return "NO_PATH";
    case ReasonCode::SignatureInvalid: return "SIGNATURE_INVALID";
    case ReasonCode::Expired: return "EXPIRED";
    case ReasonCode::NotYetValid: return "NOT_YET_VALID";
    case ReasonCode::Revoked: return "REVOKED";
    case ReasonCode::RevocationUnavailable: return "REVOCATION_UNAVAILABLE";
    case ReasonCode::BasicConstraints: return "BASIC_CONSTRAINTS";
    case ReasonCode::KeyUsage: return "KEY_USAGE";
    case ReasonCode::PolicyEmpty: return "POLICY_EMPTY";
    case ReasonCode::UnknownCriticalExt: return "UNKNOWN_CRITICAL_EXT";
    case ReasonCode::PathTooLong: return "PATH_TOO_LONG";
    case ReasonCode::NameChainBroken: return "NAME_CHAIN_BROKEN";
    }
    return "?";
}

std::optional<ReasonCode> reason_code_from_int(int code) {
    if (code < 0 || code > 12) return std::nullopt;
    return static_cast<ReasonCode>(code);
}

namespace {

bool signature_checks(ByteView key, const PublicKeyCertificate& c) {
    try {
        return crypto::verify(key, c.signature_algorithm, c.tbs_bytes, c.signature);
    } catch (const crypto::UnrecognizedAlgorithm&) {
        return false;  // cannot judge; fail closed for path purposes
    }
}

bool crl_signature_checks(ByteView key, const RevocationList& crl) {
    try {
        return crypto::verify(key, crl.signature_algorithm, crl.tbs_bytes, crl.signature);
    } catch (const crypto::UnrecognizedAlgorithm&) {
        return false;
    }
}

struct PathBuilder {
    const CertStore& store;
    const TrustAnchorSet& anchors;
    size_t max_len;
    std::vector<std::vector<PublicKeyCertificate>> found;
    std::vector<PublicKeyCertificate> chain;
    std::set<crypto::Digest> seen;

    void extend() {
        const PublicKeyCertificate& last = chain.back();
        const TrustAnchor* anchor = anchors.find(last.issuer);
        if (anchor && signature_checks(anchor->public_key, last)) {
            found.push_back(chain);
        }
        if (chain.size() >= max_len) return;
        for (const PublicKeyCertificate* cand : store.find_issuer_candidates(last)) {
            crypto::Digest d = crypto::digest(cert::encode_certificate(*cand));
            if (seen.count(d)) continue;  // loop elimination
            seen.insert(d);
            chain.push_back(*cand);
            extend();
            chain.pop_back();
            seen.erase(d);
        }
    }
};

PathValidationResult failure(ReasonCode reason, const std::vector<PublicKeyCertificate>& chain,
                             const TrustAnchor& anchor) {
    PathValidationResult r;
    r.status = PathStatus::Invalid;
    r.reason = reason;
    r.chain = chain;
    r.anchor_name = anchor.name;
    return r;
}

}  // namespace

std::vector<std::vector<PublicKeyCertificate>> build_path(const PublicKeyCertificate& target,
                                                          const CertStore& store,
                                                          const TrustAnchorSet& anchors,
                                                          size_t max_len) {
    if (max_len < 1) return {};
    PathBuilder builder{store, anchors, max_len, {}, {}, {}};
    builder.chain.push_back(target);
    builder.seen.insert(crypto::digest(cert::encode_certificate(target)));
    builder.extend();
    return std::move(builder.found);
}

RevocationCheck scan_revocation_lists(const std::vector<const RevocationList*>& lists,
                                      uint64_t serial, ByteView issuer_public_key,
                                      const Time& time, RevocationMode mode,
                                      ValidationTrace* trace) {
    // Usable lists: verifying signature and current window; pick the freshest
    // by thisUpdate, then nextUpdate, then store order.
    const RevocationList* freshest = nullptr;
    for (const RevocationList* crl : lists) {
        if (!crl->current_at(time)) continue;
        if (!crl_signature_checks(issuer_public_key, *crl)) continue;
        if (!freshest || crl->this_update > freshest->this_update ||
            (crl->this_update == freshest->this_update &&
             crl->next_update > freshest->next_update)) {
            freshest = crl;
        }
    }
    RevocationCheck check;
    if (!freshest) {
        if (mode == RevocationMode::SoftFail) {
            check.status = RevocationStatus::Good;
            check.stale_warning = true;
        } else {
            check.status = RevocationStatus::Unavailable;
        }
        return check;
    }
    if (trace) trace->note_crl_expiry(freshest->next_update);
    for (const cert::RevocationEntry& e : freshest->entries) {
        if (e.serial == serial) {
            check.status = RevocationStatus::Revoked;
            check.revoked_at = e.revoked_at;
            check.reason = e.reason;
            return check;
        }
    }
    check.status = RevocationStatus::Good;
    return check;
}

RevocationCheck check_revocation(const PublicKeyCertificate& cert, ByteView issuer_public_key,
                                 const CertStore& store, const Time& time, RevocationMode mode,
                                 ValidationTrace* trace) {
    return scan_revocation_lists(store.find_crls(cert.issuer), cert.serial, issuer_public_key,
                                 time, mode, trace);
}

PolicySet intersect_policies(const PolicySet& current, const PolicySet& cert_policies) {
    if (!cert_policies) return current;
    if (!current) return cert_policies;
    std::vector<der::Oid> out;
    for (const der::Oid& oid : *current) {
        if (std::find(cert_policies->begin(), cert_policies->end(), oid) !=
                cert_policies->end() &&
            std::find(out.begin(), out.end(), oid) == out.end()) {
            out.push_back(oid);
        }
    }
    return out;
}

PathValidationResult validate_path(const std::vector<PublicKeyCertificate>& chain,
                                   const TrustAnchor& anchor, const ValidationOptions& options,
                                   const CertStore& store, ValidationTrace* trace) {
    PathValidationResult result;
    result.anchor_name = anchor.name;
    if (chain.empty()) {
        result.reason = ReasonCode::NoPath;
        return result;
    }
    if (chain.size() > options.max_path_length) {
        return failure(ReasonCode::PathTooLong, chain, anchor);
    }

    // Initialization.
    const Time& t = options.validation_time;
    Bytes working_key = anchor.public_key;
    cert::Name working_issuer = anchor.name;
    PolicySet policy = options.initial_policy_set;

    // Basic checking runs anchor-side first; chain[0] is the target.
    for (size_t pos = chain.size(); pos-- > 0;) {
        const PublicKeyCertificate& c = chain[pos];
        const bool is_target = pos == 0;

        if (!signature_checks(working_key, c)) {
            return failure(ReasonCode::SignatureInvalid, chain, anchor);
        }
        if (t < c.not_before) return failure(ReasonCode::NotYetValid, chain, anchor);
        if (c.not_after < t) return failure(ReasonCode::Expired, chain, anchor);

        RevocationCheck rc =
            check_revocation(c, working_key, store, t, options.revocation_mode, trace);
        if (rc.status == RevocationStatus::Revoked) {
            return failure(ReasonCode::Revoked, chain, anchor);
        }
        if (rc.status == RevocationStatus::Unavailable) {
            return failure(ReasonCode::RevocationUnavailable, chain, anchor);
        }

        if (!(c.issuer == working_issuer)) {
            return failure(ReasonCode::NameChainBroken, chain, anchor);
        }

        policy = intersect_policies(policy, c.policies());

        if (!is_target) {
            // Preparation for the next certificate in the sequence.
            std::optional<cert::BasicConstraints> bc = c.basic_constraints();
            if (!bc || !bc->ca) return failure(ReasonCode::BasicConstraints, chain, anchor);
            // pathLenConstraint bounds the intermediates below this CA.
            if (bc->path_len && static_cast<int64_t>(pos - 1) > *bc->path_len) {
                return failure(ReasonCode::BasicConstraints, chain, anchor);
            }
            std::optional<uint8_t> usage = c.key_usage();
            if (usage && (*usage & cert::kUsageKeyCertSign) == 0) {
                return failure(ReasonCode::KeyUsage, chain, anchor);
            }
        }

        if (!c.unknown_critical_extensions().empty()) {
            return failure(ReasonCode::UnknownCriticalExt, chain, anchor);
        }

        working_key = c.public_key;
        working_issuer = c.subject;
    }

    // Wrap-up.
    if (policy && policy->empty() && options.initial_policy_set) {
        PathValidationResult r = failure(ReasonCode::PolicyEmpty, chain, anchor);
        r.surviving_policies = policy;
        return r;
    }
    result.status = PathStatus::Valid;
    result.reason = ReasonCode::Ok;
    result.chain = chain;
    result.surviving_policies = policy;
    return result;
}

PathValidationResult validate_pkc(const PublicKeyCertificate& target, const CertStore& store,
                                  const ValidationOptions& options, ValidationTrace* trace) {
    auto chains = build_path(target, store, options.anchors, options.max_path_length);
    if (chains.empty()) {
        PathValidationResult r;
        r.status = PathStatus::Invalid;
        r.reason = ReasonCode::NoPath;
        return r;
    }
    std::optional<PathValidationResult> first;
    for (const auto& chain : chains) {
        const TrustAnchor* anchor = options.anchors.find(chain.back().issuer);
        if (!anchor) continue;  // cannot happen for chains build_path returns
        PathValidationResult r = validate_path(chain, *anchor, options, store, trace);
        if (r.valid()) return r;
        if (!first) first = std::move(r);
    }
    if (first) return *first;
    PathValidationResult r;
    r.status = PathStatus::Invalid;
    r.reason = ReasonCode::NoPath;
    return r;
}

}  // namespace pmikit::path
