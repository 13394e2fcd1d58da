#include "doctest.h"

#include <functional>

#include "pmikit/der.hpp"
#include "support/generators.hpp"
#include "support/mutations.hpp"

using namespace pmikit;
using der::Errc;
using der::Oid;
using der::Time;
using der::Value;

namespace {
Bytes bytes_of(std::initializer_list<int> list) {
    Bytes out;
    for (int b : list) out.push_back(static_cast<uint8_t>(b));
    return out;
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const der::Error& e) {
        return e.code();
    }
    FAIL("expected a der::Error");
    return Errc::Truncated;
}
}  // namespace

TEST_CASE("primitive encodings match the DER rules") {
    CHECK(der::encode(Value::null()) == bytes_of({0x05, 0x00}));
    CHECK(der::encode(Value::integer(0)) == bytes_of({0x02, 0x01, 0x00}));
    CHECK(der::encode(Value::oid(Oid{2, 5, 4, 3})) == bytes_of({0x06, 0x03, 0x55, 0x04, 0x03}));
    CHECK(der::encode(Value::boolean(true)) == bytes_of({0x01, 0x01, 0xFF}));
    CHECK(der::encode(Value::integer(127)) == bytes_of({0x02, 0x01, 0x7F}));
    CHECK(der::encode(Value::integer(128)) == bytes_of({0x02, 0x02, 0x00, 0x80}));
    CHECK(der::encode(Value::integer(-1)) == bytes_of({0x02, 0x01, 0xFF}));
    CHECK(der::encode(Value::integer(-129)) == bytes_of({0x02, 0x02, 0xFF, 0x7F}));
}

TEST_CASE("decode returns the first TLV and bytes consumed") {
    der::Decoded d = der::decode(bytes_of({0x05, 0x00}));
    CHECK(d.value == Value::null());
    CHECK(d.consumed == 2);

    d = der::decode(bytes_of({0x30, 0x03, 0x02, 0x01, 0x07}));
    CHECK(d.value == Value::sequence({Value::integer(7)}));
    CHECK(d.consumed == 5);

    // Trailing bytes after the first TLV are the caller's business.
    d = der::decode(bytes_of({0x05, 0x00, 0xAA, 0xBB}));
    CHECK(d.consumed == 2);
}

TEST_CASE("length helper round trip and canonical forms") {
    CHECK(der::encode_length(5) == bytes_of({0x05}));
    CHECK(der::encode_length(127) == bytes_of({0x7F}));
    CHECK(der::encode_length(128) == bytes_of({0x81, 0x80}));
    CHECK(der::encode_length(150) == bytes_of({0x81, 0x96}));
    CHECK(der::encode_length(256) == bytes_of({0x82, 0x01, 0x00}));

    auto [len, octets] = der::decode_length(bytes_of({0x82, 0x01, 0x00}));
    CHECK(len == 256);
    CHECK(octets == 3);

    CHECK(code_of([] { der::decode_length(Bytes{}); }) == Errc::Truncated);
}

TEST_CASE("decode_length rejects every non-minimal spelling") {
    CHECK(code_of([] { der::decode_length(bytes_of({0x81, 0x05})); }) == Errc::NonCanonicalLength);
    CHECK(code_of([] { der::decode_length(bytes_of({0x82, 0x00, 0x96})); }) ==
          Errc::NonCanonicalLength);
    CHECK(code_of([] { der::decode_length(bytes_of({0x80})); }) == Errc::NonCanonicalLength);
    CHECK(code_of([] { der::decode_length(bytes_of({0x85, 0x01, 0x01, 0x01, 0x01, 0x01})); }) ==
          Errc::OversizeLength);
}

TEST_CASE("malformed inputs raise the advertised error codes") {
    CHECK(code_of([] { der::decode(Bytes{}); }) == Errc::Truncated);
    CHECK(code_of([] { der::decode(bytes_of({0x30, 0x05, 0x02, 0x01})); }) == Errc::Truncated);
    CHECK(code_of([] { der::decode(bytes_of({0x0A, 0x01, 0x00})); }) == Errc::UnsupportedTag);
    CHECK(code_of([] { der::decode(bytes_of({0x5F, 0x00})); }) == Errc::UnsupportedTag);
    CHECK(code_of([] { der::decode(bytes_of({0xCA, 0x00})); }) == Errc::UnsupportedTag);
    // INTEGER with a redundant leading octet.
    CHECK(code_of([] { der::decode(bytes_of({0x02, 0x02, 0x00, 0x07})); }) ==
          Errc::MalformedContent);
    // Primitive SEQUENCE tag.
    CHECK(code_of([] { der::decode(bytes_of({0x10, 0x00})); }) == Errc::UnsupportedTag);

    Bytes deep;
    for (int i = 0; i < 40; ++i) {
        deep.push_back(0x30);
        deep.push_back(static_cast<uint8_t>(2 * (40 - i) - 2));
    }
    CHECK(code_of([&] { der::decode(deep); }) == Errc::NestingTooDeep);
}

TEST_CASE("GeneralizedTime is the only accepted shape") {
    Value v = der::encode_time(Time{2004, 10, 6, 0, 0, 0});
    CHECK(to_string(v.content) == "20041006000000Z");

    CHECK(code_of([] { Time::parse_generalized("20041006000000"); }) == Errc::MalformedTime);
    CHECK(code_of([] { Time::parse_generalized("20041006000000.5Z"); }) == Errc::MalformedTime);
    CHECK(code_of([] { Time::parse_generalized("20041306000000Z"); }) == Errc::MalformedTime);
    CHECK(code_of([] { Time::parse_generalized("19490101000000Z"); }) == Errc::MalformedTime);
    CHECK(code_of([] { Time::parse_generalized("24500101000000Z"); }) == Errc::MalformedTime);

    // Calendar arithmetic round trip.
    Time t{2024, 2, 29, 23, 59, 59};
    CHECK(Time::from_unix(t.to_unix()) == t);
    CHECK(t.plus_seconds(1) == Time{2024, 3, 1, 0, 0, 0});
}

TEST_CASE("round trip holds over random profile values") {
    testgen::Rng rng(0xDE12);
    for (int i = 0; i < 2500; ++i) {
        Value v = testgen::random_value(rng);
        Bytes encoded = der::encode(v);
        der::Decoded d = der::decode(encoded);
        REQUIRE(d.consumed == encoded.size());
        REQUIRE(d.value == v);
        // Determinism: structurally equal values produce identical bytes.
        REQUIRE(der::encode(d.value) == encoded);
    }
}

TEST_CASE("random timestamps round trip through GeneralizedTime") {
    testgen::Rng rng(0x71AE);
    for (int i = 0; i < 500; ++i) {
        Time t = testgen::random_time(rng);
        Value v = der::encode_time(t);
        CHECK(der::decode_time(der::decode(der::encode(v)).value) == t);
    }
}

TEST_CASE("every non-canonical length mutation of an accepted encoding is rejected") {
    testgen::Rng rng(0xBEEF);
    size_t mutants_checked = 0;
    for (int i = 0; i < 300; ++i) {
        Value v = testgen::random_value(rng);
        Bytes encoded = der::encode(v);
        for (const Bytes& mutant : testgen::non_canonical_length_mutants(encoded)) {
            ++mutants_checked;
            CHECK_THROWS_AS((void)der::decode(mutant), der::Error);
        }
    }
    CHECK(mutants_checked > 300);
}

TEST_CASE("SET ordering is enforced on both sides") {
    Value ordered = Value::set({Value::integer(1), Value::octet_string(Bytes{0x00})});
    CHECK_NOTHROW((void)der::encode(ordered));

    Value misordered = Value::set({Value::octet_string(Bytes{0x00}), Value::integer(1)});
    CHECK(code_of([&] { der::encode(misordered); }) == Errc::MalformedContent);

    // 31 xx yy: SET whose two children are swapped relative to DER order.
    Bytes raw = bytes_of({0x31, 0x06, 0x04, 0x01, 0x00, 0x02, 0x01, 0x01});
    CHECK(code_of([&] { der::decode(raw); }) == Errc::MalformedContent);
}

TEST_CASE("oid helpers") {
    Oid oid = Oid::parse("1.3.6.1.4.1.57264.99.1");
    CHECK(oid.to_string() == "1.3.6.1.4.1.57264.99.1");
    CHECK(der::decode_oid_content(der::encode_oid_content(oid)) == oid);
    CHECK_THROWS_AS(Oid::parse("borken"), der::Error);
    CHECK_THROWS_AS((void)der::encode_oid_content(Oid{1, 40}), der::Error);
    CHECK_THROWS_AS((void)der::encode_oid_content(Oid{3, 1}), der::Error);
}
