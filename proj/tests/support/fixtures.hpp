// Small hand-rolled PKI worlds for the unit suites.

#ifndef PMIKIT_TESTS_FIXTURES_HPP_
#define PMIKIT_TESTS_FIXTURES_HPP_

#include <string>

#include "pmikit/authority.hpp"
#include "pmikit/store.hpp"

namespace testfix {

using namespace pmikit;

inline cert::Name name_of(const std::string& cn) {
    return cert::Name{{{cert::kOidCommonName, cn}, {cert::kOidOrganization, "lab"}}};
}

inline der::Time at(int year, int month, int day, int hour = 0, int minute = 0,
                    int second = 0) {
    return der::Time{year, month, day, hour, minute, second};
}

// Validation mid-window, certificates valid 2024..2026, CRLs a week around T.
inline const der::Time kT = at(2025, 6, 1, 12, 0, 0);
inline const der::Time kNotBefore = at(2024, 1, 1);
inline const der::Time kNotAfter = at(2026, 1, 1);
inline const der::Time kCrlFrom = at(2025, 5, 28);
inline const der::Time kCrlUntil = at(2025, 6, 8);

struct SimpleWorld {
    authority::Issuer ca;
    cert::PublicKeyCertificate ca_cert;
    cert::PublicKeyCertificate leaf;
    crypto::KeyPair leaf_key;
    cert::CertStore store;  // leaf + an empty CRL from the CA; no CA cert
    cert::TrustAnchorSet anchors;
};

inline SimpleWorld simple_world(const std::string& ca_cn = "root",
                                const std::string& leaf_cn = "leaf") {
    SimpleWorld w{authority::make_issuer(name_of(ca_cn)), {}, {}, {}, {}, {}};
    w.ca_cert = authority::issue_self_signed_ca(w.ca, kNotBefore, kNotAfter);
    w.leaf_key = authority::derive_entity_key(name_of(leaf_cn));
    w.leaf = authority::issue_end_entity(w.ca, name_of(leaf_cn), w.leaf_key.public_key,
                                         kNotBefore, kNotAfter);
    w.store.add_certificate(w.leaf);
    w.store.add_revocation_list(authority::issue_revocation_list(w.ca, kCrlFrom, kCrlUntil, {}));
    w.anchors = cert::TrustAnchorSet::from_certificates({w.ca_cert});
    return w;
}

}  // namespace testfix

#endif  // PMIKIT_TESTS_FIXTURES_HPP_
