/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_DER_HPP_
#define PMIKIT_DER_HPP_

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pmikit/bytes.hpp"

namespace pmikit::der {

// Definite-length DER subset. Universal tags supported:
//   1 BOOLEAN, 2 INTEGER, 3 BIT STRING, 4 OCTET STRING, 5 NULL,
//   6 OBJECT IDENTIFIER, 12 UTF8String, 19 PrintableString,
//   24 GeneralizedTime, 16 SEQUENCE, 17 SET
// plus context-class tags numbered 0..9. Everything else is rejected.

enum class Errc {
    Truncated,
    NonCanonicalLength,
    UnsupportedTag,
    NestingTooDeep,
    MalformedContent,
    MalformedTime,
    OversizeLength,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

inline constexpr uint32_t kTagBoolean = 1;
inline constexpr uint32_t kTagInteger = 2;
inline constexpr uint32_t kTagBitString = 3;
inline constexpr uint32_t kTagOctetString = 4;
inline constexpr uint32_t kTagNull = 5;
inline constexpr uint32_t kTagOid = 6;
inline constexpr uint32_t kTagUtf8String = 12;
inline constexpr uint32_t kTagSequence = 16;
inline constexpr uint32_t kTagSet = 17;
inline constexpr uint32_t kTagPrintableString = 19;
inline constexpr uint32_t kTagGeneralizedTime = 24;

inline constexpr size_t kMaxDepth = 32;
inline constexpr size_t kMaxContentLength = size_t{1} << 24;

enum class TagClass : uint8_t { Universal, Context };

struct Tag {
    TagClass cls = TagClass::Universal;
    bool constructed = false;
    uint32_t number = 0;

    bool operator==(const Tag&) const = default;

    static Tag universal(uint32_t number, bool constructed = false) {
        return Tag{TagClass::Universal, constructed, number};
    }
    static Tag context(uint32_t number, bool constructed = true) {
        return Tag{TagClass::Context, constructed, number};
    }
};

struct Oid {
    std::vector<uint32_t> arcs;

    Oid() = default;
    Oid(std::initializer_list<uint32_t> list) : arcs(list) {}
    explicit Oid(std::vector<uint32_t> a) : arcs(std::move(a)) {}

    auto operator<=>(const Oid&) const = default;

    std::string to_string() const;               // dotted form, e.g. "2.5.4.3"
    static Oid parse(const std::string& dotted); // throws Error(MalformedContent)
};

// UTC wall-clock timestamp at seconds precision. Valid years 1950..2449;
// wire form is GeneralizedTime "YYYYMMDDHHMMSSZ" and nothing else.
struct Time {
    int year = 1950;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;

    auto operator<=>(const Time&) const = default;

    bool valid() const;
    std::string to_generalized() const;       // "YYYYMMDDHHMMSSZ"
    std::string to_iso8601() const;           // "YYYY-MM-DDTHH:MM:SSZ"
    int64_t to_unix() const;
    Time plus_seconds(int64_t delta) const;   // throws Error(MalformedTime) out of range

    static Time parse_generalized(const std::string& text);
    static Time from_unix(int64_t seconds);
};

// One TLV node. Primitive nodes carry `content`; constructed nodes carry
// `children` (content stays empty). The invariant is enforced by encode().
struct Value {
    Tag tag;
    Bytes content;
    std::vector<Value> children;

    bool operator==(const Value&) const = default;
    bool constructed() const { return tag.constructed; }

    static Value boolean(bool v);
    static Value integer(int64_t v);
    static Value bit_string(ByteView bits);    // byte-aligned, zero unused bits
    static Value octet_string(ByteView bytes);
    static Value null();
    static Value oid(const Oid& oid);
    static Value utf8(const std::string& text);
    static Value printable(const std::string& text);
    static Value time(const Time& t);
    static Value sequence(std::vector<Value> elems);
    static Value set(std::vector<Value> elems);
    static Value context(uint32_t number, std::vector<Value> elems);
    static Value context_primitive(uint32_t number, ByteView bytes);

    // Checked readers; throw Error(MalformedContent) on tag/content mismatch.
    bool as_boolean() const;
    int64_t as_int64() const;
    uint64_t as_positive_int64() const;  // rejects zero and negatives
    ByteView as_octets() const;          // OCTET STRING payload
    ByteView bit_string_bytes() const;   // BIT STRING payload minus unused-bits octet
    Oid as_oid() const;
    std::string as_text() const;         // UTF8String or PrintableString
    Time as_time() const;
};

struct Decoded {
    Value value;
    size_t consumed = 0;
};

// Canonical DER serialization; pure and deterministic. Throws Error on any
// profile violation (unsupported tag, malformed primitive content, depth).
Bytes encode(const Value& value);

// Parses the first complete TLV and reports bytes consumed. Indefinite
// lengths, non-minimal length octets, and unsupported tags are rejected.
Decoded decode(ByteView bytes);

// Length-octet helpers, exposed for tests and the frame layer.
Bytes encode_length(uint64_t n);                            // pre: n < 2^32
std::pair<uint32_t, size_t> decode_length(ByteView bytes);  // (length, octets consumed)

Value encode_time(const Time& t);
Time decode_time(const Value& v);

// OID content octets (no tag/length), used by the codec internally.
Bytes encode_oid_content(const Oid& oid);
Oid decode_oid_content(ByteView bytes);

}  // namespace pmikit::der

#endif  // PMIKIT_DER_HPP_
