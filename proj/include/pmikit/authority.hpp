/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_AUTHORITY_HPP_
#define PMIKIT_AUTHORITY_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmikit/certs.hpp"

namespace pmikit::authority {

class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// An issuing identity: CA, AA, or service. Keys are derived deterministically
// from the name so regenerating a fixture world is byte-identical.
struct Issuer {
    cert::Name name;
    crypto::KeyPair key;
    uint64_t next_serial = 1;

    uint64_t take_serial() { return next_serial++; }
};

Issuer make_issuer(const cert::Name& name);
crypto::KeyPair derive_entity_key(const cert::Name& name);

struct CertParams {
    cert::Name subject;
    Bytes public_key;
    der::Time not_before;
    der::Time not_after;
    bool ca = false;
    std::optional<int64_t> path_len;
    std::optional<uint8_t> key_usage;
    std::vector<der::Oid> policies;  // empty: no certificatePolicies extension
    bool add_key_ids = true;
    std::vector<cert::Extension> extra_extensions;
};

cert::PublicKeyCertificate issue_certificate(Issuer& issuer, const CertParams& params);

// Root profile: subject == issuer, cA with keyCertSign/cRLSign usage.
cert::PublicKeyCertificate issue_self_signed_ca(Issuer& issuer, const der::Time& not_before,
                                                const der::Time& not_after,
                                                std::optional<int64_t> path_len = std::nullopt);

cert::PublicKeyCertificate issue_intermediate_ca(Issuer& parent, Issuer& child,
                                                 const der::Time& not_before,
                                                 const der::Time& not_after,
                                                 std::optional<int64_t> path_len = std::nullopt);

cert::PublicKeyCertificate issue_end_entity(Issuer& parent, const cert::Name& subject,
                                            ByteView public_key, const der::Time& not_before,
                                            const der::Time& not_after);

struct AcParams {
    cert::Name holder_issuer;
    uint64_t holder_serial = 0;
    der::Time not_before;
    der::Time not_after;
    std::vector<cert::Attribute> attributes;
    std::optional<std::vector<std::string>> targets;  // targetInformation when set
    bool no_rev_avail = false;
    std::vector<cert::Extension> extra_extensions;
};

cert::AttributeCertificate issue_attribute_certificate(Issuer& aa, const AcParams& params);

cert::RevocationList issue_revocation_list(const Issuer& issuer, const der::Time& this_update,
                                           const der::Time& next_update,
                                           std::vector<cert::RevocationEntry> entries);

// Re-signs a record after field surgery; test scaffolding for invalid worlds.
void resign_certificate(cert::PublicKeyCertificate& c, const crypto::KeyPair& issuer_key);
void resign_attribute_certificate(cert::AttributeCertificate& c, const crypto::KeyPair& aa_key);
void resign_revocation_list(cert::RevocationList& c, const crypto::KeyPair& issuer_key);

}  // namespace pmikit::authority

#endif  // PMIKIT_AUTHORITY_HPP_
