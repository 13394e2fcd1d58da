/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/certs.hpp"

#include <algorithm>

namespace pmikit::cert {

using der::Oid;
using der::Tag;
using der::Time;
using der::Value;

namespace {

[[noreturn]] void violation(const std::string& what) { throw ProfileError(what); }

const Value& expect_sequence(const Value& v, const char* what) {
    if (v.tag != Tag::universal(der::kTagSequence, true)) {
        violation(std::string(what) + ": expected SEQUENCE");
    }
    return v;
}

const Value& child(const Value& v, size_t i, const char* what) {
    if (i >= v.children.size()) violation(std::string(what) + ": missing field");
    return v.children[i];
}

Value algorithm_value(const crypto::AlgorithmId& a) {
    return Value::sequence({Value::oid(a.oid)});
}

crypto::AlgorithmId algorithm_from(const Value& v) {
    expect_sequence(v, "AlgorithmIdentifier");
    if (v.children.size() != 1) violation("AlgorithmIdentifier: expected a single OID");
    return crypto::AlgorithmId{child(v, 0, "AlgorithmIdentifier").as_oid()};
}

Value extension_value(const Extension& e) {
    return Value::sequence({Value::oid(e.oid), Value::boolean(e.critical),
                            Value::octet_string(e.value)});
}

Extension extension_from(const Value& v) {
    expect_sequence(v, "Extension");
    if (v.children.size() != 3) violation("Extension: expected oid, critical, value");
    Extension e;
    e.oid = child(v, 0, "Extension").as_oid();
    e.critical = child(v, 1, "Extension").as_boolean();
    e.value = to_bytes(child(v, 2, "Extension").as_octets());
    return e;
}

Value validity_value(const Time& nb, const Time& na) {
    return Value::sequence({Value::time(nb), Value::time(na)});
}

void validity_from(const Value& v, Time& nb, Time& na) {
    expect_sequence(v, "Validity");
    if (v.children.size() != 2) violation("Validity: expected two timestamps");
    nb = child(v, 0, "Validity").as_time();
    na = child(v, 1, "Validity").as_time();
    if (na < nb) violation("Validity: notBefore after notAfter");
}

// Inner structure of every recognized extension must parse; the validator
// decides what to do about critical ones it does not recognize.
void check_recognized_extension(const Extension& e) {
    der::Decoded d = der::decode(e.value);
    if (d.consumed != e.value.size()) violation("extension value has trailing bytes");
    const Value& inner = d.value;
    if (e.oid == kOidBasicConstraints) {
        expect_sequence(inner, "basicConstraints");
        if (inner.children.empty() || inner.children.size() > 2) {
            violation("basicConstraints: expected cA [, pathLen]");
        }
        (void)child(inner, 0, "basicConstraints").as_boolean();
        if (inner.children.size() == 2) {
            int64_t n = child(inner, 1, "basicConstraints").as_int64();
            if (n < 0) violation("basicConstraints: negative pathLenConstraint");
        }
    } else if (e.oid == kOidKeyUsage) {
        ByteView bits = inner.bit_string_bytes();
        if (bits.size() != 1) violation("keyUsage: expected one flag octet");
    } else if (e.oid == kOidSubjectKeyId || e.oid == kOidAuthorityKeyId) {
        if (inner.as_octets().size() != 20) violation("key identifier must be 20 bytes");
    } else if (e.oid == kOidCertificatePolicies) {
        expect_sequence(inner, "certificatePolicies");
        for (const Value& p : inner.children) (void)p.as_oid();
    } else if (e.oid == kOidTargetInformation) {
        expect_sequence(inner, "targetInformation");
        for (const Value& t : inner.children) (void)t.as_text();
    } else if (e.oid == kOidNoRevAvail) {
        if (inner.tag != Tag::universal(der::kTagNull)) violation("noRevAvail must be NULL");
    }
}

std::vector<Extension> extensions_from_wrapper(const Value& wrapper) {
    if (wrapper.tag != Tag::context(0, true) || wrapper.children.size() != 1) {
        violation("extensions: expected [0] wrapper with one SEQUENCE");
    }
    const Value& seq = expect_sequence(wrapper.children[0], "extensions");
    if (seq.children.empty()) violation("extensions wrapper present but empty");
    std::vector<Extension> out;
    for (const Value& ev : seq.children) {
        Extension e = extension_from(ev);
        for (const Extension& seen : out) {
            if (seen.oid == e.oid) violation("duplicate extension " + e.oid.to_string());
        }
        check_recognized_extension(e);
        out.push_back(std::move(e));
    }
    return out;
}

void append_extensions(std::vector<Value>& fields, const std::vector<Extension>& exts) {
    if (exts.empty()) return;
    std::vector<Value> items;
    items.reserve(exts.size());
    for (const Extension& e : exts) items.push_back(extension_value(e));
    fields.push_back(Value::context(0, {Value::sequence(std::move(items))}));
}

uint64_t serial_from(const Value& v, const char* what) {
    try {
        return v.as_positive_int64();
    } catch (const der::Error&) {
        violation(std::string(what) + ": serial must be a positive INTEGER");
    }
}

Value serial_value(uint64_t serial, const char* what) {
    if (serial == 0 || serial > uint64_t{INT64_MAX}) {
        violation(std::string(what) + ": serial must be a positive INTEGER");
    }
    return Value::integer(static_cast<int64_t>(serial));
}

Value signed_wrapper(const Value& tbs, const crypto::AlgorithmId& alg,
                     const crypto::Signature& sig) {
    return Value::sequence({tbs, algorithm_value(alg), Value::octet_string(sig.bytes)});
}

// Splits the outer SEQUENCE { tbs, sigAlg, signature } and captures the exact
// bytes of the TBS element the signature covers.
struct SignedParts {
    Value tbs;
    Bytes tbs_bytes;
    crypto::AlgorithmId algorithm;
    crypto::Signature signature;
};

SignedParts split_signed(ByteView bytes, const char* what) {
    der::Decoded outer = der::decode(bytes);
    if (outer.consumed != bytes.size()) violation(std::string(what) + ": trailing bytes");
    expect_sequence(outer.value, what);
    if (outer.value.children.size() != 3) {
        violation(std::string(what) + ": expected tbs, algorithm, signature");
    }
    SignedParts parts;
    parts.tbs = outer.value.children[0];
    parts.algorithm = algorithm_from(outer.value.children[1]);
    parts.signature.algorithm = parts.algorithm;
    parts.signature.bytes = to_bytes(outer.value.children[2].as_octets());

    // Locate the TBS slice: it starts right after the outer header.
    auto [outer_len, outer_len_octets] = der::decode_length(bytes.subspan(1));
    (void)outer_len;
    size_t tbs_offset = 1 + outer_len_octets;
    der::Decoded tbs = der::decode(bytes.subspan(tbs_offset));
    parts.tbs_bytes = to_bytes(bytes.subspan(tbs_offset, tbs.consumed));
    return parts;
}

void check_tbs_identity(const Bytes& captured, const Value& rebuilt, const char* what) {
    if (der::encode(rebuilt) != captured) {
        violation(std::string(what) + ": TBS does not re-encode canonically");
    }
}

}  // namespace

bool extension_oid_recognized(const Oid& oid) {
    return oid == kOidBasicConstraints || oid == kOidKeyUsage || oid == kOidSubjectKeyId ||
           oid == kOidAuthorityKeyId || oid == kOidCertificatePolicies ||
           oid == kOidTargetInformation || oid == kOidNoRevAvail;
}

// ---- Name ----

Value Name::to_value() const {
    if (rdns.empty()) violation("Name: must be non-empty");
    std::vector<Value> rdn_values;
    rdn_values.reserve(rdns.size());
    for (const auto& [type, value] : rdns) {
        Value atv = Value::sequence({Value::oid(type), Value::utf8(value)});
        rdn_values.push_back(Value::set({std::move(atv)}));
    }
    return Value::sequence(std::move(rdn_values));
}

Name Name::from_value(const Value& v) {
    expect_sequence(v, "Name");
    if (v.children.empty()) violation("Name: must be non-empty");
    Name name;
    for (const Value& rdn : v.children) {
        if (rdn.tag != Tag::universal(der::kTagSet, true) || rdn.children.size() != 1) {
            violation("Name: RDN must be a single-valued SET");
        }
        const Value& atv = expect_sequence(rdn.children[0], "Name ATV");
        if (atv.children.size() != 2) violation("Name ATV: expected type and value");
        name.rdns.emplace_back(child(atv, 0, "Name ATV").as_oid(),
                               child(atv, 1, "Name ATV").as_text());
    }
    return name;
}

Bytes Name::encoded() const { return der::encode(to_value()); }

namespace {
struct AttrAbbrev {
    const char* abbrev;
    const Oid* oid;
};
const AttrAbbrev kAbbrevs[] = {
    {"cn", &kOidCommonName},  {"c", &kOidCountry}, {"o", &kOidOrganization},
    {"ou", &kOidOrgUnit},     {"role", &kOidRole},
};
}  // namespace

std::string Name::display() const {
    std::string out;
    for (size_t i = 0; i < rdns.size(); ++i) {
        if (i) out.push_back(',');
        bool abbreviated = false;
        for (const AttrAbbrev& a : kAbbrevs) {
            if (*a.oid == rdns[i].first) {
                out += a.abbrev;
                abbreviated = true;
                break;
            }
        }
        if (!abbreviated) out += rdns[i].first.to_string();
        out.push_back('=');
        out += rdns[i].second;
    }
    return out;
}

Name Name::parse_display(const std::string& text) {
    Name name;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string part =
            text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t eq = part.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 > part.size()) {
            violation("Name text: expected type=value, got '" + part + "'");
        }
        std::string type_text = part.substr(0, eq);
        std::string value = part.substr(eq + 1);
        Oid type;
        bool matched = false;
        for (const AttrAbbrev& a : kAbbrevs) {
            if (type_text == a.abbrev) {
                type = *a.oid;
                matched = true;
                break;
            }
        }
        if (!matched) type = Oid::parse(type_text);
        name.rdns.emplace_back(type, value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (name.rdns.empty()) violation("Name text: empty");
    return name;
}

// ---- extension accessors ----

namespace {
const Extension* find_ext(const std::vector<Extension>& exts, const Oid& oid) {
    for (const Extension& e : exts) {
        if (e.oid == oid) return &e;
    }
    return nullptr;
}

std::vector<Oid> unknown_critical(const std::vector<Extension>& exts) {
    std::vector<Oid> out;
    for (const Extension& e : exts) {
        if (e.critical && !extension_oid_recognized(e.oid)) out.push_back(e.oid);
    }
    return out;
}
}  // namespace

const Extension* PublicKeyCertificate::find_extension(const Oid& oid) const {
    return find_ext(extensions, oid);
}

std::optional<BasicConstraints> PublicKeyCertificate::basic_constraints() const {
    const Extension* e = find_extension(kOidBasicConstraints);
    if (!e) return std::nullopt;
    Value inner = der::decode(e->value).value;
    BasicConstraints bc;
    bc.ca = inner.children[0].as_boolean();
    if (inner.children.size() == 2) bc.path_len = inner.children[1].as_int64();
    return bc;
}

std::optional<uint8_t> PublicKeyCertificate::key_usage() const {
    const Extension* e = find_extension(kOidKeyUsage);
    if (!e) return std::nullopt;
    Value inner = der::decode(e->value).value;
    return inner.bit_string_bytes()[0];
}

std::optional<Bytes> PublicKeyCertificate::subject_key_id() const {
    const Extension* e = find_extension(kOidSubjectKeyId);
    if (!e) return std::nullopt;
    return to_bytes(der::decode(e->value).value.as_octets());
}

std::optional<Bytes> PublicKeyCertificate::authority_key_id() const {
    const Extension* e = find_extension(kOidAuthorityKeyId);
    if (!e) return std::nullopt;
    return to_bytes(der::decode(e->value).value.as_octets());
}

std::optional<std::vector<Oid>> PublicKeyCertificate::policies() const {
    const Extension* e = find_extension(kOidCertificatePolicies);
    if (!e) return std::nullopt;
    Value inner = der::decode(e->value).value;
    std::vector<Oid> out;
    for (const Value& p : inner.children) out.push_back(p.as_oid());
    return out;
}

std::vector<Oid> PublicKeyCertificate::unknown_critical_extensions() const {
    return unknown_critical(extensions);
}

bool PublicKeyCertificate::self_signed() const {
    return issuer == subject &&
           crypto::verify(public_key, signature_algorithm, tbs_bytes, signature);
}

const Extension* AttributeCertificate::find_extension(const Oid& oid) const {
    return find_ext(extensions, oid);
}

std::optional<std::vector<std::string>> AttributeCertificate::targets() const {
    const Extension* e = find_extension(kOidTargetInformation);
    if (!e) return std::nullopt;
    Value inner = der::decode(e->value).value;
    std::vector<std::string> out;
    for (const Value& t : inner.children) out.push_back(t.as_text());
    return out;
}

bool AttributeCertificate::no_rev_avail() const {
    return find_extension(kOidNoRevAvail) != nullptr;
}

std::vector<Oid> AttributeCertificate::critical_extension_oids() const {
    std::vector<Oid> out;
    for (const Extension& e : extensions) {
        if (e.critical) out.push_back(e.oid);
    }
    return out;
}

const std::vector<std::string>* AttributeCertificate::values_for(const Oid& type) const {
    for (const Attribute& a : attributes) {
        if (a.type == type) return &a.values;
    }
    return nullptr;
}

bool RevocationList::lists(uint64_t serial) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const RevocationEntry& e) { return e.serial == serial; });
}

// ---- TBS encoders ----

der::Value tbs_certificate_value(const PublicKeyCertificate& c) {
    std::vector<Value> fields;
    fields.push_back(serial_value(c.serial, "Certificate"));
    fields.push_back(c.issuer.to_value());
    fields.push_back(c.subject.to_value());
    fields.push_back(validity_value(c.not_before, c.not_after));
    fields.push_back(Value::sequence(
        {algorithm_value(c.key_algorithm), Value::octet_string(c.public_key)}));
    append_extensions(fields, c.extensions);
    return Value::sequence(std::move(fields));
}

der::Value tbs_attribute_certificate_value(const AttributeCertificate& c) {
    std::vector<Value> fields;
    fields.push_back(serial_value(c.serial, "AttributeCertificate"));
    fields.push_back(Value::sequence(
        {c.holder_issuer.to_value(), serial_value(c.holder_serial, "Holder")}));
    fields.push_back(c.issuer.to_value());
    fields.push_back(validity_value(c.not_before, c.not_after));
    std::vector<Value> attrs;
    for (const Attribute& a : c.attributes) {
        std::vector<Value> values;
        for (const std::string& v : a.values) values.push_back(Value::utf8(v));
        attrs.push_back(Value::sequence({Value::oid(a.type), Value::sequence(std::move(values))}));
    }
    fields.push_back(Value::sequence(std::move(attrs)));
    append_extensions(fields, c.extensions);
    return Value::sequence(std::move(fields));
}

der::Value tbs_revocation_list_value(const RevocationList& c) {
    std::vector<Value> fields;
    fields.push_back(c.issuer.to_value());
    fields.push_back(Value::time(c.this_update));
    fields.push_back(Value::time(c.next_update));
    std::vector<Value> entries;
    for (const RevocationEntry& e : c.entries) {
        entries.push_back(Value::sequence({serial_value(e.serial, "RevocationEntry"),
                                           Value::time(e.revoked_at),
                                           Value::integer(e.reason)}));
    }
    fields.push_back(Value::sequence(std::move(entries)));
    return Value::sequence(std::move(fields));
}

// ---- parse / encode ----

PublicKeyCertificate parse_certificate(ByteView bytes) {
    SignedParts parts = split_signed(bytes, "Certificate");
    const Value& tbs = expect_sequence(parts.tbs, "TBSCertificate");
    if (tbs.children.size() < 5 || tbs.children.size() > 6) {
        violation("TBSCertificate: wrong field count");
    }
    PublicKeyCertificate c;
    c.serial = serial_from(child(tbs, 0, "TBSCertificate"), "Certificate");
    c.issuer = Name::from_value(child(tbs, 1, "TBSCertificate"));
    c.subject = Name::from_value(child(tbs, 2, "TBSCertificate"));
    validity_from(child(tbs, 3, "TBSCertificate"), c.not_before, c.not_after);
    const Value& spki = expect_sequence(child(tbs, 4, "TBSCertificate"), "SubjectPublicKeyInfo");
    if (spki.children.size() != 2) violation("SubjectPublicKeyInfo: wrong field count");
    c.key_algorithm = algorithm_from(child(spki, 0, "SubjectPublicKeyInfo"));
    c.public_key = to_bytes(child(spki, 1, "SubjectPublicKeyInfo").as_octets());
    if (c.public_key.empty()) violation("SubjectPublicKeyInfo: empty key");
    if (tbs.children.size() == 6) c.extensions = extensions_from_wrapper(tbs.children[5]);
    c.signature_algorithm = parts.algorithm;
    c.signature = parts.signature;
    c.tbs_bytes = parts.tbs_bytes;
    check_tbs_identity(c.tbs_bytes, tbs_certificate_value(c), "Certificate");
    return c;
}

AttributeCertificate parse_attribute_certificate(ByteView bytes) {
    SignedParts parts = split_signed(bytes, "AttributeCertificate");
    const Value& tbs = expect_sequence(parts.tbs, "TBSAttributeCertificate");
    if (tbs.children.size() < 5 || tbs.children.size() > 6) {
        violation("TBSAttributeCertificate: wrong field count");
    }
    AttributeCertificate c;
    c.serial = serial_from(child(tbs, 0, "TBSAttributeCertificate"), "AttributeCertificate");
    const Value& holder = expect_sequence(child(tbs, 1, "TBSAttributeCertificate"), "Holder");
    if (holder.children.size() != 2) violation("Holder: expected issuer and serial");
    c.holder_issuer = Name::from_value(child(holder, 0, "Holder"));
    c.holder_serial = serial_from(child(holder, 1, "Holder"), "Holder");
    c.issuer = Name::from_value(child(tbs, 2, "TBSAttributeCertificate"));
    validity_from(child(tbs, 3, "TBSAttributeCertificate"), c.not_before, c.not_after);
    const Value& attrs = expect_sequence(child(tbs, 4, "TBSAttributeCertificate"), "attributes");
    for (const Value& av : attrs.children) {
        expect_sequence(av, "Attribute");
        if (av.children.size() != 2) violation("Attribute: expected type and values");
        Attribute a;
        a.type = child(av, 0, "Attribute").as_oid();
        const Value& values = expect_sequence(child(av, 1, "Attribute"), "Attribute values");
        for (const Value& vv : values.children) a.values.push_back(vv.as_text());
        c.attributes.push_back(std::move(a));
    }
    if (tbs.children.size() == 6) c.extensions = extensions_from_wrapper(tbs.children[5]);
    c.signature_algorithm = parts.algorithm;
    c.signature = parts.signature;
    c.tbs_bytes = parts.tbs_bytes;
    check_tbs_identity(c.tbs_bytes, tbs_attribute_certificate_value(c), "AttributeCertificate");
    return c;
}

RevocationList parse_revocation_list(ByteView bytes) {
    SignedParts parts = split_signed(bytes, "RevocationList");
    const Value& tbs = expect_sequence(parts.tbs, "TBSRevocationList");
    if (tbs.children.size() != 4) violation("TBSRevocationList: wrong field count");
    RevocationList c;
    c.issuer = Name::from_value(child(tbs, 0, "TBSRevocationList"));
    c.this_update = child(tbs, 1, "TBSRevocationList").as_time();
    c.next_update = child(tbs, 2, "TBSRevocationList").as_time();
    if (c.next_update < c.this_update) violation("RevocationList: thisUpdate after nextUpdate");
    const Value& entries = expect_sequence(child(tbs, 3, "TBSRevocationList"), "entries");
    for (const Value& ev : entries.children) {
        expect_sequence(ev, "RevocationEntry");
        if (ev.children.size() != 3) violation("RevocationEntry: wrong field count");
        RevocationEntry e;
        e.serial = serial_from(child(ev, 0, "RevocationEntry"), "RevocationEntry");
        e.revoked_at = child(ev, 1, "RevocationEntry").as_time();
        e.reason = child(ev, 2, "RevocationEntry").as_int64();
        if (e.reason < 0 || e.reason > 255) violation("RevocationEntry: reason out of range");
        for (const RevocationEntry& seen : c.entries) {
            if (seen.serial == e.serial) violation("RevocationList: duplicate serial");
        }
        c.entries.push_back(e);
    }
    c.signature_algorithm = parts.algorithm;
    c.signature = parts.signature;
    c.tbs_bytes = parts.tbs_bytes;
    check_tbs_identity(c.tbs_bytes, tbs_revocation_list_value(c), "RevocationList");
    return c;
}

Bytes encode_certificate(const PublicKeyCertificate& c) {
    return der::encode(signed_wrapper(tbs_certificate_value(c), c.signature_algorithm,
                                      c.signature));
}

Bytes encode_attribute_certificate(const AttributeCertificate& c) {
    return der::encode(signed_wrapper(tbs_attribute_certificate_value(c), c.signature_algorithm,
                                      c.signature));
}

Bytes encode_revocation_list(const RevocationList& c) {
    return der::encode(signed_wrapper(tbs_revocation_list_value(c), c.signature_algorithm,
                                      c.signature));
}

// ---- extension constructors ----

Extension make_basic_constraints(bool ca, std::optional<int64_t> path_len, bool critical) {
    std::vector<Value> fields{Value::boolean(ca)};
    if (path_len) fields.push_back(Value::integer(*path_len));
    return Extension{kOidBasicConstraints, critical, der::encode(Value::sequence(fields))};
}

Extension make_key_usage(uint8_t flags, bool critical) {
    Bytes one{flags};
    return Extension{kOidKeyUsage, critical, der::encode(Value::bit_string(one))};
}

Extension make_subject_key_id(ByteView key_id) {
    return Extension{kOidSubjectKeyId, false, der::encode(Value::octet_string(key_id))};
}

Extension make_authority_key_id(ByteView key_id) {
    return Extension{kOidAuthorityKeyId, false, der::encode(Value::octet_string(key_id))};
}

Extension make_certificate_policies(const std::vector<Oid>& oids, bool critical) {
    std::vector<Value> items;
    for (const Oid& o : oids) items.push_back(Value::oid(o));
    return Extension{kOidCertificatePolicies, critical,
                     der::encode(Value::sequence(std::move(items)))};
}

Extension make_target_information(const std::vector<std::string>& targets, bool critical) {
    std::vector<Value> items;
    for (const std::string& t : targets) items.push_back(Value::utf8(t));
    return Extension{kOidTargetInformation, critical,
                     der::encode(Value::sequence(std::move(items)))};
}

Extension make_no_rev_avail() {
    return Extension{kOidNoRevAvail, false, der::encode(Value::null())};
}

Bytes compute_key_id(ByteView public_key) {
    Bytes d = crypto::digest_bytes(public_key);
    d.resize(20);
    return d;
}

}  // namespace pmikit::cert
