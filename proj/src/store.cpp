/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/store.hpp"

#include <algorithm>
#include <fstream>

namespace pmikit::cert {

namespace fs = std::filesystem;

void CertStore::add_certificate(PublicKeyCertificate cert) {
    size_t idx = certs_.size();
    by_subject_[cert.subject.encoded()].push_back(idx);
    if (auto ski = cert.subject_key_id()) by_key_id_[*ski].push_back(idx);
    certs_.push_back(std::move(cert));
}

void CertStore::add_attribute_certificate(AttributeCertificate ac) {
    acs_.push_back(std::move(ac));
}

void CertStore::add_revocation_list(RevocationList crl) {
    crls_by_issuer_[crl.issuer.encoded()].push_back(crls_.size());
    crls_.push_back(std::move(crl));
}

std::vector<const PublicKeyCertificate*> CertStore::find_by_subject(const Name& name) const {
    std::vector<const PublicKeyCertificate*> out;
    auto it = by_subject_.find(name.encoded());
    if (it == by_subject_.end()) return out;
    for (size_t idx : it->second) out.push_back(&certs_[idx]);
    return out;
}

std::vector<const PublicKeyCertificate*> CertStore::find_by_key_id(ByteView key_id) const {
    std::vector<const PublicKeyCertificate*> out;
    auto it = by_key_id_.find(to_bytes(key_id));
    if (it == by_key_id_.end()) return out;
    for (size_t idx : it->second) out.push_back(&certs_[idx]);
    return out;
}

std::vector<const PublicKeyCertificate*> CertStore::find_issuer_candidates(
    const PublicKeyCertificate& cert) const {
    std::vector<const PublicKeyCertificate*> out = find_by_subject(cert.issuer);
    std::optional<Bytes> aki = cert.authority_key_id();
    auto ski_matches = [&](const PublicKeyCertificate* c) {
        if (!aki) return false;
        std::optional<Bytes> ski = c->subject_key_id();
        return ski && *ski == *aki;
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const PublicKeyCertificate* a, const PublicKeyCertificate* b) {
                         bool am = ski_matches(a), bm = ski_matches(b);
                         if (am != bm) return am;
                         if (a->not_after != b->not_after) return b->not_after < a->not_after;
                         return a->serial < b->serial;
                     });
    return out;
}

std::vector<const RevocationList*> CertStore::find_crls(const Name& issuer) const {
    std::vector<const RevocationList*> out;
    auto it = crls_by_issuer_.find(issuer.encoded());
    if (it == crls_by_issuer_.end()) return out;
    for (size_t idx : it->second) out.push_back(&crls_[idx]);
    return out;
}

const TrustAnchor* TrustAnchorSet::find(const Name& name) const {
    for (const TrustAnchor& a : anchors) {
        if (a.name == name) return &a;
    }
    return nullptr;
}

TrustAnchorSet TrustAnchorSet::from_certificates(
    const std::vector<PublicKeyCertificate>& certs) {
    TrustAnchorSet set;
    for (const PublicKeyCertificate& c : certs) {
        if (!c.self_signed()) {
            throw ProfileError("trust anchor source is not self-signed: " + c.subject.display());
        }
        if (set.find(c.subject)) {
            throw ProfileError("duplicate trust anchor name: " + c.subject.display());
        }
        set.anchors.push_back(TrustAnchor{c.subject, c.key_algorithm, c.public_key});
    }
    return set;
}

// ---- armor ----

static const std::string kArmorPrefix = "-----BEGIN PMI ";
static const std::string kArmorSuffix = "-----";

std::string armor(const std::string& kind, ByteView der_bytes) {
    std::string b64 = base64_encode(der_bytes);
    std::string out = kArmorPrefix + kind + kArmorSuffix + "\n";
    for (size_t i = 0; i < b64.size(); i += 64) {
        out += b64.substr(i, 64);
        out.push_back('\n');
    }
    out += "-----END PMI " + kind + kArmorSuffix + "\n";
    return out;
}

std::pair<std::string, Bytes> dearmor(const std::string& text) {
    size_t begin = text.find(kArmorPrefix);
    if (begin == std::string::npos) throw ProfileError("armor: missing BEGIN line");
    size_t kind_start = begin + kArmorPrefix.size();
    size_t kind_end = text.find(kArmorSuffix, kind_start);
    if (kind_end == std::string::npos) throw ProfileError("armor: malformed BEGIN line");
    std::string kind = text.substr(kind_start, kind_end - kind_start);

    std::string end_marker = "-----END PMI " + kind + kArmorSuffix;
    size_t body_start = kind_end + kArmorSuffix.size();
    size_t end = text.find(end_marker, body_start);
    if (end == std::string::npos) throw ProfileError("armor: missing END line for " + kind);

    std::string body = text.substr(body_start, end - body_start);
    try {
        return {kind, base64_decode(body)};
    } catch (const std::invalid_argument& e) {
        throw ProfileError(std::string("armor: ") + e.what());
    }
}

bool looks_armored(ByteView data) {
    if (data.size() < kArmorPrefix.size()) return false;
    return std::equal(kArmorPrefix.begin(), kArmorPrefix.end(), data.begin());
}

// ---- files ----

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());
    return data;
}

void write_file(const fs::path& path, ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

// ---- load_store ----

namespace {

Bytes payload_of(const fs::path& file) {
    Bytes raw = read_file(file);
    if (looks_armored(raw)) {
        return dearmor(std::string(raw.begin(), raw.end())).second;
    }
    return raw;
}

std::vector<fs::path> sorted_files(const fs::path& dir) {
    std::vector<fs::path> files;
    if (!fs::exists(dir)) return files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace

LoadReport load_store(const fs::path& dir) {
    if (!fs::exists(dir) || !fs::is_directory(dir)) {
        throw IoError("store directory not found: " + dir.string());
    }
    LoadReport report;
    for (const fs::path& file : sorted_files(dir / "certs")) {
        try {
            report.store.add_certificate(parse_certificate(payload_of(file)));
        } catch (const std::exception& e) {
            report.skipped.push_back({file.string(), e.what()});
        }
    }
    for (const fs::path& file : sorted_files(dir / "acs")) {
        try {
            report.store.add_attribute_certificate(parse_attribute_certificate(payload_of(file)));
        } catch (const std::exception& e) {
            report.skipped.push_back({file.string(), e.what()});
        }
    }
    for (const fs::path& file : sorted_files(dir / "crls")) {
        try {
            report.store.add_revocation_list(parse_revocation_list(payload_of(file)));
        } catch (const std::exception& e) {
            report.skipped.push_back({file.string(), e.what()});
        }
    }
    return report;
}

}  // namespace pmikit::cert
