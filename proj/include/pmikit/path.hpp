/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_PATH_HPP_
#define PMIKIT_PATH_HPP_

#include <optional>
#include <vector>

#include "pmikit/clock.hpp"
#include "pmikit/store.hpp"

namespace pmikit::path {

enum class PathStatus : int { Valid = 0, Invalid = 1, Unknown = 2 };

// Closed registry; the wire protocol transmits the integer.
enum class ReasonCode : int {
    Ok = 0,
    NoPath = 1,
    SignatureInvalid = 2,
    Expired = 3,
    NotYetValid = 4,
    Revoked = 5,
    RevocationUnavailable = 6,
    BasicConstraints = 7,
    KeyUsage = 8,
    PolicyEmpty = 9,
    UnknownCriticalExt = 10,
    PathTooLong = 11,
    NameChainBroken = 12,
};

const char* reason_code_name(ReasonCode code);
std::optional<ReasonCode> reason_code_from_int(int code);

enum class RevocationMode { HardFail, SoftFail };

// nullopt plays the role of the special value ANY.
using PolicySet = std::optional<std::vector<der::Oid>>;

inline constexpr size_t kDefaultMaxPathLength = 8;

struct ValidationOptions {
    cert::TrustAnchorSet anchors;
    der::Time validation_time;
    PolicySet initial_policy_set;  // ANY unless set
    size_t max_path_length = kDefaultMaxPathLength;
    RevocationMode revocation_mode = RevocationMode::HardFail;
};

struct PathValidationResult {
    PathStatus status = PathStatus::Invalid;
    ReasonCode reason = ReasonCode::NoPath;
    // Target first, ending at the anchor-issued certificate; empty iff
    // construction failed.
    std::vector<cert::PublicKeyCertificate> chain;
    std::optional<cert::Name> anchor_name;
    // Meaningful for VALID and POLICY_EMPTY outcomes.
    PolicySet surviving_policies;

    bool valid() const { return status == PathStatus::Valid; }
};

enum class RevocationStatus { Good, Revoked, Unavailable };

struct RevocationCheck {
    RevocationStatus status = RevocationStatus::Unavailable;
    std::optional<der::Time> revoked_at;
    int64_t reason = 0;
    // Set when the check went soft on missing revocation data.
    bool stale_warning = false;
};

// Carries evaluation facts the caller may need beyond the verdict; the CVS
// cache keys its entry lifetime on the earliest consulted CRL expiry.
struct ValidationTrace {
    std::optional<der::Time> earliest_crl_expiry;

    void note_crl_expiry(const der::Time& next_update) {
        if (!earliest_crl_expiry || next_update < *earliest_crl_expiry) {
            earliest_crl_expiry = next_update;
        }
    }
};

// Forward (target-to-anchor) depth-first chain construction with loop
// elimination by certificate digest. Chains are returned in discovery order
// under the store's deterministic candidate ordering; an empty result means
// NO_PATH.
std::vector<std::vector<cert::PublicKeyCertificate>> build_path(
    const cert::PublicKeyCertificate& target, const cert::CertStore& store,
    const cert::TrustAnchorSet& anchors, size_t max_len);

// Four-phase validation of one constructed chain (target first). Failures are
// encoded in the result, never thrown.
PathValidationResult validate_path(const std::vector<cert::PublicKeyCertificate>& chain,
                                   const cert::TrustAnchor& anchor,
                                   const ValidationOptions& options,
                                   const cert::CertStore& store,
                                   ValidationTrace* trace = nullptr);

// CRL-based status check against lists from the store whose issuer matches
// cert.issuer and whose signature verifies under issuerPublicKey. The
// revocation mode is already applied: soft-fail turns missing data into
// Good with stale_warning set.
RevocationCheck check_revocation(const cert::PublicKeyCertificate& cert,
                                 ByteView issuer_public_key, const cert::CertStore& store,
                                 const der::Time& time, RevocationMode mode,
                                 ValidationTrace* trace = nullptr);

// Same scan over an explicit list set; shared with the AC revocation check.
RevocationCheck scan_revocation_lists(const std::vector<const cert::RevocationList*>& lists,
                                      uint64_t serial, ByteView issuer_public_key,
                                      const der::Time& time, RevocationMode mode,
                                      ValidationTrace* trace = nullptr);

// Policy-set intersection with ANY as identity. A certificate without a
// certificatePolicies extension contributes ANY.
PolicySet intersect_policies(const PolicySet& current, const PolicySet& cert_policies);

// Composes build_path and validate_path over the candidates in order: first
// VALID wins, otherwise the first candidate's failure, otherwise NO_PATH.
PathValidationResult validate_pkc(const cert::PublicKeyCertificate& target,
                                  const cert::CertStore& store, const ValidationOptions& options,
                                  ValidationTrace* trace = nullptr);

}  // namespace pmikit::path

#endif  // PMIKIT_PATH_HPP_
