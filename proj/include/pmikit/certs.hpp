/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_CERTS_HPP_
#define PMIKIT_CERTS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmikit/bytes.hpp"
#include "pmikit/crypto.hpp"
#include "pmikit/der.hpp"

namespace pmikit::cert {

class ProfileError : public std::runtime_error {
public:
    explicit ProfileError(const std::string& what) : std::runtime_error(what) {}
};

// Recognized extension OIDs (standard X.509 arcs).
inline const der::Oid kOidBasicConstraints{2, 5, 29, 19};
inline const der::Oid kOidKeyUsage{2, 5, 29, 15};
inline const der::Oid kOidSubjectKeyId{2, 5, 29, 14};
inline const der::Oid kOidAuthorityKeyId{2, 5, 29, 35};
inline const der::Oid kOidCertificatePolicies{2, 5, 29, 32};
inline const der::Oid kOidTargetInformation{2, 5, 29, 55};
inline const der::Oid kOidNoRevAvail{2, 5, 29, 56};

// Naming attribute types.
inline const der::Oid kOidCommonName{2, 5, 4, 3};
inline const der::Oid kOidCountry{2, 5, 4, 6};
inline const der::Oid kOidOrganization{2, 5, 4, 10};
inline const der::Oid kOidOrgUnit{2, 5, 4, 11};
inline const der::Oid kOidRole{2, 5, 4, 72};

// keyUsage flag bits (one content byte, X.509 bit order).
inline constexpr uint8_t kUsageDigitalSignature = 0x80;
inline constexpr uint8_t kUsageKeyCertSign = 0x04;
inline constexpr uint8_t kUsageCrlSign = 0x02;

bool extension_oid_recognized(const der::Oid& oid);

// Distinguished name: ordered single-valued RDNs. Compared by canonical DER
// byte equality, which field equality matches since the encoding is canonical.
struct Name {
    std::vector<std::pair<der::Oid, std::string>> rdns;

    bool operator==(const Name&) const = default;
    bool empty() const { return rdns.empty(); }

    der::Value to_value() const;
    static Name from_value(const der::Value& v);

    Bytes encoded() const;
    bool operator<(const Name& other) const { return encoded() < other.encoded(); }

    // Text form "cn=CA1,o=Lab"; known types abbreviated, others dotted OIDs.
    std::string display() const;
    static Name parse_display(const std::string& text);
};

struct Extension {
    der::Oid oid;
    bool critical = false;
    Bytes value;  // DER of the inner structure

    bool operator==(const Extension&) const = default;
};

struct BasicConstraints {
    bool ca = false;
    std::optional<int64_t> path_len;
};

struct PublicKeyCertificate {
    uint64_t serial = 0;
    Name issuer;
    Name subject;
    der::Time not_before;
    der::Time not_after;
    crypto::AlgorithmId key_algorithm;
    Bytes public_key;
    crypto::AlgorithmId signature_algorithm;
    crypto::Signature signature;
    std::vector<Extension> extensions;
    Bytes tbs_bytes;

    bool operator==(const PublicKeyCertificate&) const = default;

    const Extension* find_extension(const der::Oid& oid) const;
    std::optional<BasicConstraints> basic_constraints() const;
    std::optional<uint8_t> key_usage() const;
    std::optional<Bytes> subject_key_id() const;
    std::optional<Bytes> authority_key_id() const;
    // nullopt means no certificatePolicies extension (treated as ANY upstream).
    std::optional<std::vector<der::Oid>> policies() const;
    std::vector<der::Oid> unknown_critical_extensions() const;

    bool self_signed() const;
};

struct Attribute {
    der::Oid type;
    std::vector<std::string> values;

    bool operator==(const Attribute&) const = default;
};

struct AttributeCertificate {
    uint64_t serial = 0;
    Name holder_issuer;       // baseCertificateID: issuer of the bound PKC
    uint64_t holder_serial = 0;
    Name issuer;              // the Attribute Authority
    der::Time not_before;
    der::Time not_after;
    std::vector<Attribute> attributes;
    std::vector<Extension> extensions;
    crypto::AlgorithmId signature_algorithm;
    crypto::Signature signature;
    Bytes tbs_bytes;

    bool operator==(const AttributeCertificate&) const = default;

    const Extension* find_extension(const der::Oid& oid) const;
    std::optional<std::vector<std::string>> targets() const;
    bool no_rev_avail() const;
    std::vector<der::Oid> critical_extension_oids() const;
    const std::vector<std::string>* values_for(const der::Oid& type) const;
};

struct RevocationEntry {
    uint64_t serial = 0;
    der::Time revoked_at;
    int64_t reason = 0;

    bool operator==(const RevocationEntry&) const = default;
};

// Serves as both PKC CRL and AC revocation list, depending on issuer role.
struct RevocationList {
    Name issuer;
    der::Time this_update;
    der::Time next_update;
    std::vector<RevocationEntry> entries;
    crypto::AlgorithmId signature_algorithm;
    crypto::Signature signature;
    Bytes tbs_bytes;

    bool operator==(const RevocationList&) const = default;

    bool lists(uint64_t serial) const;
    bool current_at(const der::Time& t) const {
        return this_update <= t && t <= next_update;
    }
};

// TBS encoders, shared between the parsers (byte-identity check) and the
// issuing side (authority signs exactly these bytes).
der::Value tbs_certificate_value(const PublicKeyCertificate& c);
der::Value tbs_attribute_certificate_value(const AttributeCertificate& c);
der::Value tbs_revocation_list_value(const RevocationList& c);

// Parsers perform full syntactic and semantic checking; unknown critical
// extensions are recorded on the record, not rejected here.
PublicKeyCertificate parse_certificate(ByteView bytes);
AttributeCertificate parse_attribute_certificate(ByteView bytes);
RevocationList parse_revocation_list(ByteView bytes);

Bytes encode_certificate(const PublicKeyCertificate& c);
Bytes encode_attribute_certificate(const AttributeCertificate& c);
Bytes encode_revocation_list(const RevocationList& c);

// Extension constructors for the issuing side.
Extension make_basic_constraints(bool ca, std::optional<int64_t> path_len, bool critical = true);
Extension make_key_usage(uint8_t flags, bool critical = true);
Extension make_subject_key_id(ByteView key_id);
Extension make_authority_key_id(ByteView key_id);
Extension make_certificate_policies(const std::vector<der::Oid>& oids, bool critical = false);
Extension make_target_information(const std::vector<std::string>& targets, bool critical = true);
Extension make_no_rev_avail();

// First 20 bytes of digest(publicKey bytes).
Bytes compute_key_id(ByteView public_key);

}  // namespace pmikit::cert

#endif  // PMIKIT_CERTS_HPP_
