/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_STORE_HPP_
#define PMIKIT_STORE_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pmikit/certs.hpp"

namespace pmikit::cert {

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Indexed credential collection. Single writer, many readers: mutate during
// load or explicit add, then validate against the snapshot. Never
// deduplicates distinct records.
class CertStore {
public:
    void add_certificate(PublicKeyCertificate cert);
    void add_attribute_certificate(AttributeCertificate ac);
    void add_revocation_list(RevocationList crl);

    const std::vector<PublicKeyCertificate>& certificates() const { return certs_; }
    const std::vector<AttributeCertificate>& attribute_certificates() const { return acs_; }
    const std::vector<RevocationList>& revocation_lists() const { return crls_; }

    // All certificates whose subject equals `name`, in insertion order.
    std::vector<const PublicKeyCertificate*> find_by_subject(const Name& name) const;

    // Certificates whose subject equals cert.issuer, ordered: AKI/SKI match
    // first, then descending notAfter, then ascending serial, then insertion
    // order. Deterministic for identical insertion sequences.
    std::vector<const PublicKeyCertificate*> find_issuer_candidates(
        const PublicKeyCertificate& cert) const;

    std::vector<const PublicKeyCertificate*> find_by_key_id(ByteView key_id) const;

    // Revocation lists with the given issuer, in insertion order.
    std::vector<const RevocationList*> find_crls(const Name& issuer) const;

private:
    std::vector<PublicKeyCertificate> certs_;
    std::vector<AttributeCertificate> acs_;
    std::vector<RevocationList> crls_;
    std::map<Bytes, std::vector<size_t>> by_subject_;
    std::map<Bytes, std::vector<size_t>> by_key_id_;
    std::map<Bytes, std::vector<size_t>> crls_by_issuer_;
};

struct TrustAnchor {
    Name name;
    crypto::AlgorithmId algorithm;
    Bytes public_key;
};

// Directly trusted (name, key) pairs, sourced from self-signed certificates.
struct TrustAnchorSet {
    std::vector<TrustAnchor> anchors;

    bool empty() const { return anchors.empty(); }
    const TrustAnchor* find(const Name& name) const;

    // Every certificate must be self-signed with a verifying signature and a
    // distinct subject; throws ProfileError otherwise.
    static TrustAnchorSet from_certificates(const std::vector<PublicKeyCertificate>& certs);
};

// PEM-like armored text form for human handling of DER blobs.
// Kinds: "CERTIFICATE", "ATTRIBUTE CERTIFICATE", "CRL".
std::string armor(const std::string& kind, ByteView der_bytes);
std::pair<std::string, Bytes> dearmor(const std::string& text);
bool looks_armored(ByteView data);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);

struct SkippedFile {
    std::string path;
    std::string reason;
};

struct LoadReport {
    CertStore store;
    std::vector<SkippedFile> skipped;
};

// Loads <dir>/certs/*, <dir>/acs/*, <dir>/crls/* (raw DER or armored).
// Per-file parse failures land in the skip list; only a missing or unreadable
// root directory is fatal (IoError).
LoadReport load_store(const std::filesystem::path& dir);

}  // namespace pmikit::cert

#endif  // PMIKIT_STORE_HPP_
