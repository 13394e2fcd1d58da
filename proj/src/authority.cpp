/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/authority.hpp"

namespace pmikit::authority {

using cert::Extension;
using cert::Name;
using cert::PublicKeyCertificate;
using der::Time;

crypto::KeyPair derive_entity_key(const Name& name) {
    Bytes seed = name.encoded();
    append(seed, to_bytes(std::string("pmikit.mock-key.v1")));
    return crypto::derive_mock_keypair(seed);
}

Issuer make_issuer(const Name& name) { return Issuer{name, derive_entity_key(name), 1}; }

PublicKeyCertificate issue_certificate(Issuer& issuer, const CertParams& params) {
    if (params.public_key.empty()) throw SpecError("subject public key is empty");
    if (params.not_after < params.not_before) throw SpecError("validity window inverted");

    PublicKeyCertificate c;
    c.serial = issuer.take_serial();
    c.issuer = issuer.name;
    c.subject = params.subject;
    c.not_before = params.not_before;
    c.not_after = params.not_after;
    c.key_algorithm = crypto::AlgorithmId::mock();
    c.public_key = params.public_key;
    c.signature_algorithm = issuer.key.algorithm;

    c.extensions.push_back(cert::make_basic_constraints(params.ca, params.path_len));
    if (params.key_usage) c.extensions.push_back(cert::make_key_usage(*params.key_usage));
    if (params.add_key_ids) {
        c.extensions.push_back(cert::make_subject_key_id(cert::compute_key_id(c.public_key)));
        c.extensions.push_back(
            cert::make_authority_key_id(cert::compute_key_id(issuer.key.public_key)));
    }
    if (!params.policies.empty()) {
        c.extensions.push_back(cert::make_certificate_policies(params.policies));
    }
    for (const Extension& e : params.extra_extensions) c.extensions.push_back(e);

    resign_certificate(c, issuer.key);
    return c;
}

PublicKeyCertificate issue_self_signed_ca(Issuer& issuer, const Time& not_before,
                                          const Time& not_after,
                                          std::optional<int64_t> path_len) {
    CertParams p;
    p.subject = issuer.name;
    p.public_key = issuer.key.public_key;
    p.not_before = not_before;
    p.not_after = not_after;
    p.ca = true;
    p.path_len = path_len;
    p.key_usage = cert::kUsageKeyCertSign | cert::kUsageCrlSign | cert::kUsageDigitalSignature;
    return issue_certificate(issuer, p);
}

PublicKeyCertificate issue_intermediate_ca(Issuer& parent, Issuer& child, const Time& not_before,
                                           const Time& not_after,
                                           std::optional<int64_t> path_len) {
    CertParams p;
    p.subject = child.name;
    p.public_key = child.key.public_key;
    p.not_before = not_before;
    p.not_after = not_after;
    p.ca = true;
    p.path_len = path_len;
    p.key_usage = cert::kUsageKeyCertSign | cert::kUsageCrlSign | cert::kUsageDigitalSignature;
    return issue_certificate(parent, p);
}

PublicKeyCertificate issue_end_entity(Issuer& parent, const Name& subject, ByteView public_key,
                                      const Time& not_before, const Time& not_after) {
    CertParams p;
    p.subject = subject;
    p.public_key = to_bytes(public_key);
    p.not_before = not_before;
    p.not_after = not_after;
    p.ca = false;
    p.key_usage = cert::kUsageDigitalSignature;
    return issue_certificate(parent, p);
}

cert::AttributeCertificate issue_attribute_certificate(Issuer& aa, const AcParams& params) {
    if (params.holder_serial == 0) throw SpecError("AC holder serial must be positive");
    if (params.not_after < params.not_before) throw SpecError("validity window inverted");

    cert::AttributeCertificate ac;
    ac.serial = aa.take_serial();
    ac.holder_issuer = params.holder_issuer;
    ac.holder_serial = params.holder_serial;
    ac.issuer = aa.name;
    ac.not_before = params.not_before;
    ac.not_after = params.not_after;
    ac.attributes = params.attributes;
    ac.signature_algorithm = aa.key.algorithm;
    if (params.targets) {
        ac.extensions.push_back(cert::make_target_information(*params.targets));
    }
    if (params.no_rev_avail) ac.extensions.push_back(cert::make_no_rev_avail());
    for (const Extension& e : params.extra_extensions) ac.extensions.push_back(e);

    resign_attribute_certificate(ac, aa.key);
    return ac;
}

cert::RevocationList issue_revocation_list(const Issuer& issuer, const Time& this_update,
                                           const Time& next_update,
                                           std::vector<cert::RevocationEntry> entries) {
    if (next_update < this_update) throw SpecError("revocation list window inverted");
    cert::RevocationList crl;
    crl.issuer = issuer.name;
    crl.this_update = this_update;
    crl.next_update = next_update;
    crl.entries = std::move(entries);
    crl.signature_algorithm = issuer.key.algorithm;
    resign_revocation_list(crl, issuer.key);
    return crl;
}

void resign_certificate(PublicKeyCertificate& c, const crypto::KeyPair& issuer_key) {
    c.signature_algorithm = issuer_key.algorithm;
    c.tbs_bytes = der::encode(cert::tbs_certificate_value(c));
    c.signature = crypto::sign(issuer_key, c.tbs_bytes);
}

void resign_attribute_certificate(cert::AttributeCertificate& c,
                                  const crypto::KeyPair& aa_key) {
    c.signature_algorithm = aa_key.algorithm;
    c.tbs_bytes = der::encode(cert::tbs_attribute_certificate_value(c));
    c.signature = crypto::sign(aa_key, c.tbs_bytes);
}

void resign_revocation_list(cert::RevocationList& c, const crypto::KeyPair& issuer_key) {
    c.signature_algorithm = issuer_key.algorithm;
    c.tbs_bytes = der::encode(cert::tbs_revocation_list_value(c));
    c.signature = crypto::sign(issuer_key, c.tbs_bytes);
}

}  // namespace pmikit::authority
