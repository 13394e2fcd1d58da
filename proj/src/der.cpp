/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/der.hpp"

#include <algorithm>
#include <cstdio>

namespace pmikit::der {

namespace {

[[noreturn]] void fail(Errc code, const std::string& what) { throw Error(code, what); }

bool universal_tag_supported(uint32_t number) {
    switch (number) {
    case kTagBoolean:
    case kTagInteger:
    case kTagBitString:
    case kTagOctetString:
    case kTagNull:
    case kTagOid:
    case kTagUtf8String:
    case kTagSequence:
    case kTagSet:
    case kTagPrintableString:
    case kTagGeneralizedTime:
        return true;
    default:
        return false;
    }
}

void check_tag_shape(const Tag& tag) {
    if (tag.cls == TagClass::Universal) {
        if (!universal_tag_supported(tag.number)) {
            fail(Errc::UnsupportedTag, "unsupported universal tag " + std::to_string(tag.number));
        }
        bool must_construct = tag.number == kTagSequence || tag.number == kTagSet;
        if (tag.constructed != must_construct) {
            fail(Errc::UnsupportedTag, "wrong constructed bit for universal tag " +
                                           std::to_string(tag.number));
        }
    } else {
        if (tag.number > 9) {
            fail(Errc::UnsupportedTag, "context tag number out of range: " +
                                           std::to_string(tag.number));
        }
    }
}

uint8_t tag_byte(const Tag& tag) {
    uint8_t b = tag.cls == TagClass::Context ? 0x80 : 0x00;
    if (tag.constructed) b |= 0x20;
    return b | static_cast<uint8_t>(tag.number);
}

bool printable_char_ok(char c) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) return true;
    switch (c) {
    case ' ': case '\'': case '(': case ')': case '+': case ',':
    case '-': case '.': case '/': case ':': case '=': case '?':
        return true;
    default:
        return false;
    }
}

bool utf8_well_formed(ByteView s) {
    size_t i = 0;
    while (i < s.size()) {
        uint8_t b0 = s[i];
        size_t need;
        uint32_t cp;
        if (b0 < 0x80) { ++i; continue; }
        else if ((b0 & 0xE0) == 0xC0) { need = 1; cp = b0 & 0x1F; }
        else if ((b0 & 0xF0) == 0xE0) { need = 2; cp = b0 & 0x0F; }
        else if ((b0 & 0xF8) == 0xF0) { need = 3; cp = b0 & 0x07; }
        else return false;
        if (i + need >= s.size()) return false;
        for (size_t k = 1; k <= need; ++k) {
            uint8_t b = s[i + k];
            if ((b & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (b & 0x3F);
        }
        static const uint32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
        if (cp < kMin[need]) return false;               // overlong
        if (cp > 0x10FFFF) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;  // surrogate
        i += need + 1;
    }
    return true;
}

void check_integer_content(ByteView c) {
    if (c.empty()) fail(Errc::MalformedContent, "empty INTEGER");
    if (c.size() >= 2) {
        if (c[0] == 0x00 && (c[1] & 0x80) == 0) {
            fail(Errc::MalformedContent, "non-minimal INTEGER: redundant leading 0x00");
        }
        if (c[0] == 0xFF && (c[1] & 0x80) != 0) {
            fail(Errc::MalformedContent, "non-minimal INTEGER: redundant leading 0xFF");
        }
    }
}

void check_primitive_content(const Tag& tag, ByteView c) {
    if (tag.cls == TagClass::Context) return;
    switch (tag.number) {
    case kTagBoolean:
        if (c.size() != 1 || (c[0] != 0x00 && c[0] != 0xFF)) {
            fail(Errc::MalformedContent, "BOOLEAN must be one octet, 00 or FF");
        }
        break;
    case kTagInteger:
        check_integer_content(c);
        break;
    case kTagBitString: {
        if (c.empty()) fail(Errc::MalformedContent, "BIT STRING missing unused-bits octet");
        uint8_t unused = c[0];
        if (unused > 7) fail(Errc::MalformedContent, "BIT STRING unused bits > 7");
        if (c.size() == 1 && unused != 0) {
            fail(Errc::MalformedContent, "empty BIT STRING must have zero unused bits");
        }
        if (unused > 0 && (c.back() & ((1u << unused) - 1)) != 0) {
            fail(Errc::MalformedContent, "BIT STRING padding bits must be zero");
        }
        break;
    }
    case kTagOctetString:
        break;
    case kTagNull:
        if (!c.empty()) fail(Errc::MalformedContent, "NULL must be empty");
        break;
    case kTagOid:
        decode_oid_content(c);  // throws on malformed encoding
        break;
    case kTagUtf8String:
        if (!utf8_well_formed(c)) fail(Errc::MalformedContent, "invalid UTF-8");
        break;
    case kTagPrintableString:
        for (uint8_t b : c) {
            if (!printable_char_ok(static_cast<char>(b))) {
                fail(Errc::MalformedContent, "character outside PrintableString set");
            }
        }
        break;
    case kTagGeneralizedTime:
        Time::parse_generalized(std::string(c.begin(), c.end()));
        break;
    default:
        fail(Errc::UnsupportedTag, "unsupported universal tag");
    }
}

void encode_node(const Value& v, size_t depth, Bytes& out);

Bytes encode_children(const std::vector<Value>& children, size_t depth, bool is_set) {
    std::vector<Bytes> encoded;
    encoded.reserve(children.size());
    for (const Value& child : children) {
        Bytes b;
        encode_node(child, depth, b);
        encoded.push_back(std::move(b));
    }
    if (is_set) {
        // DER SET OF: element encodings in ascending lexicographic order.
        for (size_t i = 1; i < encoded.size(); ++i) {
            if (std::lexicographical_compare(encoded[i].begin(), encoded[i].end(),
                                             encoded[i - 1].begin(), encoded[i - 1].end())) {
                fail(Errc::MalformedContent, "SET elements not in canonical order");
            }
        }
    }
    Bytes out;
    for (const Bytes& b : encoded) append(out, b);
    return out;
}

void encode_node(const Value& v, size_t depth, Bytes& out) {
    if (depth > kMaxDepth) fail(Errc::NestingTooDeep, "nesting deeper than 32");
    check_tag_shape(v.tag);

    Bytes content;
    if (v.tag.constructed) {
        if (!v.content.empty()) {
            fail(Errc::MalformedContent, "constructed value carries primitive content");
        }
        content = encode_children(v.children, depth + 1,
                                  v.tag.cls == TagClass::Universal && v.tag.number == kTagSet);
    } else {
        if (!v.children.empty()) {
            fail(Errc::MalformedContent, "primitive value carries children");
        }
        check_primitive_content(v.tag, v.content);
        content = v.content;
    }
    if (content.size() > kMaxContentLength) {
        fail(Errc::OversizeLength, "TLV content exceeds 2^24 bytes");
    }
    out.push_back(tag_byte(v.tag));
    append(out, encode_length(content.size()));
    append(out, content);
}

Value decode_node(ByteView bytes, size_t depth, size_t& consumed) {
    if (depth > kMaxDepth) fail(Errc::NestingTooDeep, "nesting deeper than 32");
    if (bytes.empty()) fail(Errc::Truncated, "missing tag octet");

    uint8_t t = bytes[0];
    uint8_t cls_bits = t & 0xC0;
    if ((t & 0x1F) == 0x1F) fail(Errc::UnsupportedTag, "multi-octet tag numbers unsupported");
    Tag tag;
    tag.constructed = (t & 0x20) != 0;
    tag.number = t & 0x1F;
    if (cls_bits == 0x00) {
        tag.cls = TagClass::Universal;
    } else if (cls_bits == 0x80) {
        tag.cls = TagClass::Context;
    } else {
        fail(Errc::UnsupportedTag, "application/private tag class unsupported");
    }
    check_tag_shape(tag);

    auto [len, len_octets] = decode_length(bytes.subspan(1));
    size_t header = 1 + len_octets;
    if (bytes.size() < header + len) fail(Errc::Truncated, "content shorter than declared length");
    ByteView content = bytes.subspan(header, len);

    Value v;
    v.tag = tag;
    if (tag.constructed) {
        size_t offset = 0;
        ByteView prev;
        const bool is_set = tag.cls == TagClass::Universal && tag.number == kTagSet;
        while (offset < content.size()) {
            size_t sub = 0;
            v.children.push_back(decode_node(content.subspan(offset), depth + 1, sub));
            if (is_set) {
                ByteView enc = content.subspan(offset, sub);
                if (!prev.empty() &&
                    std::lexicographical_compare(enc.begin(), enc.end(), prev.begin(), prev.end())) {
                    fail(Errc::MalformedContent, "SET elements not in canonical order");
                }
                prev = enc;
            }
            offset += sub;
        }
    } else {
        check_primitive_content(tag, content);
        v.content.assign(content.begin(), content.end());
    }
    consumed = header + len;
    return v;
}

}  // namespace

Bytes encode(const Value& value) {
    Bytes out;
    encode_node(value, 0, out);
    return out;
}

Decoded decode(ByteView bytes) {
    size_t consumed = 0;
    Value v = decode_node(bytes, 0, consumed);
    return Decoded{std::move(v), consumed};
}

Bytes encode_length(uint64_t n) {
    if (n >= (uint64_t{1} << 32)) fail(Errc::OversizeLength, "length does not fit 32 bits");
    Bytes out;
    if (n <= 127) {
        out.push_back(static_cast<uint8_t>(n));
        return out;
    }
    Bytes digits;
    uint64_t rest = n;
    while (rest > 0) {
        digits.push_back(static_cast<uint8_t>(rest & 0xFF));
        rest >>= 8;
    }
    out.push_back(static_cast<uint8_t>(0x80 | digits.size()));
    out.insert(out.end(), digits.rbegin(), digits.rend());
    return out;
}

std::pair<uint32_t, size_t> decode_length(ByteView bytes) {
    if (bytes.empty()) fail(Errc::Truncated, "missing length octet");
    uint8_t first = bytes[0];
    if ((first & 0x80) == 0) return {first, 1};
    if (first == 0x80) fail(Errc::NonCanonicalLength, "indefinite length");
    size_t count = first & 0x7F;
    if (count > 4) fail(Errc::OversizeLength, "length field wider than 32 bits");
    if (bytes.size() < 1 + count) fail(Errc::Truncated, "length octets truncated");
    if (bytes[1] == 0x00) fail(Errc::NonCanonicalLength, "leading zero length octet");
    uint64_t len = 0;
    for (size_t i = 1; i <= count; ++i) len = (len << 8) | bytes[i];
    if (len <= 127) fail(Errc::NonCanonicalLength, "long form used for short length");
    if (count > 1 && len < (uint64_t{1} << (8 * (count - 1)))) {
        fail(Errc::NonCanonicalLength, "length octets not minimal");
    }
    if (len > kMaxContentLength) fail(Errc::OversizeLength, "TLV content exceeds 2^24 bytes");
    return {static_cast<uint32_t>(len), 1 + count};
}

// ---- Oid ----

std::string Oid::to_string() const {
    std::string out;
    for (size_t i = 0; i < arcs.size(); ++i) {
        if (i) out.push_back('.');
        out += std::to_string(arcs[i]);
    }
    return out;
}

Oid Oid::parse(const std::string& dotted) {
    Oid oid;
    size_t pos = 0;
    while (pos <= dotted.size()) {
        size_t dot = dotted.find('.', pos);
        std::string part = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
        if (part.empty() || part.size() > 10) fail(Errc::MalformedContent, "bad OID arc: " + dotted);
        uint64_t arc = 0;
        for (char c : part) {
            if (c < '0' || c > '9') fail(Errc::MalformedContent, "bad OID arc: " + dotted);
            arc = arc * 10 + static_cast<uint64_t>(c - '0');
        }
        if (arc > 0xFFFFFFFFull) fail(Errc::MalformedContent, "OID arc too large");
        oid.arcs.push_back(static_cast<uint32_t>(arc));
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    // Shape check happens on encode; parse only validates digits.
    if (oid.arcs.size() < 2) fail(Errc::MalformedContent, "OID needs at least two arcs");
    return oid;
}

Bytes encode_oid_content(const Oid& oid) {
    if (oid.arcs.size() < 2) fail(Errc::MalformedContent, "OID needs at least two arcs");
    uint32_t a0 = oid.arcs[0];
    uint32_t a1 = oid.arcs[1];
    if (a0 > 2) fail(Errc::MalformedContent, "OID first arc must be 0, 1 or 2");
    if (a0 < 2 && a1 >= 40) fail(Errc::MalformedContent, "OID second arc must be < 40");

    auto push_subident = [](Bytes& out, uint64_t v) {
        uint8_t groups[10];
        int n = 0;
        do {
            groups[n++] = static_cast<uint8_t>(v & 0x7F);
            v >>= 7;
        } while (v > 0);
        for (int i = n - 1; i >= 1; --i) out.push_back(groups[i] | 0x80);
        out.push_back(groups[0]);
    };

    Bytes out;
    push_subident(out, uint64_t{a0} * 40 + a1);
    for (size_t i = 2; i < oid.arcs.size(); ++i) push_subident(out, oid.arcs[i]);
    return out;
}

Oid decode_oid_content(ByteView bytes) {
    if (bytes.empty()) fail(Errc::MalformedContent, "empty OID");
    Oid oid;
    size_t i = 0;
    bool first = true;
    while (i < bytes.size()) {
        if (bytes[i] == 0x80) fail(Errc::MalformedContent, "non-minimal OID subidentifier");
        uint64_t v = 0;
        size_t start = i;
        while (true) {
            if (i >= bytes.size()) fail(Errc::MalformedContent, "truncated OID subidentifier");
            v = (v << 7) | (bytes[i] & 0x7F);
            if (i - start >= 5) fail(Errc::MalformedContent, "OID subidentifier too large");
            if ((bytes[i] & 0x80) == 0) { ++i; break; }
            ++i;
        }
        if (first) {
            uint32_t a0 = v < 40 ? 0 : (v < 80 ? 1 : 2);
            oid.arcs.push_back(a0);
            oid.arcs.push_back(static_cast<uint32_t>(v - uint64_t{a0} * 40));
            first = false;
        } else {
            if (v > 0xFFFFFFFFull) fail(Errc::MalformedContent, "OID arc too large");
            oid.arcs.push_back(static_cast<uint32_t>(v));
        }
    }
    return oid;
}

// ---- Time ----

namespace {

bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static const int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return kDays[m - 1];
}

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    int64_t era = (y >= 0 ? y : y - 399) / 400;
    int64_t yoe = y - era * 400;
    int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

void civil_from_days(int64_t z, int& y, int& m, int& d) {
    z += 719468;
    int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    int64_t doe = z - era * 146097;
    int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    int64_t yr = yoe + era * 400;
    int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    int64_t mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

}  // namespace

bool Time::valid() const {
    if (year < 1950 || year > 2449) return false;
    if (month < 1 || month > 12) return false;
    if (day < 1 || day > days_in_month(year, month)) return false;
    if (hour < 0 || hour > 23) return false;
    if (minute < 0 || minute > 59) return false;
    if (second < 0 || second > 59) return false;
    return true;
}

std::string Time::to_generalized() const {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d%02d%02d%02dZ", year, month, day, hour, minute,
                  second);
    return buf;
}

std::string Time::to_iso8601() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", year, month, day, hour,
                  minute, second);
    return buf;
}

int64_t Time::to_unix() const {
    return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

Time Time::from_unix(int64_t seconds) {
    int64_t days = seconds / 86400;
    int64_t rem = seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    Time t;
    civil_from_days(days, t.year, t.month, t.day);
    t.hour = static_cast<int>(rem / 3600);
    t.minute = static_cast<int>((rem % 3600) / 60);
    t.second = static_cast<int>(rem % 60);
    if (!t.valid()) fail(Errc::MalformedTime, "timestamp outside supported year range");
    return t;
}

Time Time::plus_seconds(int64_t delta) const { return from_unix(to_unix() + delta); }

Time Time::parse_generalized(const std::string& text) {
    if (text.size() != 15 || text.back() != 'Z') {
        fail(Errc::MalformedTime, "GeneralizedTime must be YYYYMMDDHHMMSSZ");
    }
    for (size_t i = 0; i < 14; ++i) {
        if (text[i] < '0' || text[i] > '9') fail(Errc::MalformedTime, "non-digit in timestamp");
    }
    auto num = [&](size_t pos, size_t n) {
        int v = 0;
        for (size_t i = 0; i < n; ++i) v = v * 10 + (text[pos + i] - '0');
        return v;
    };
    Time t;
    t.year = num(0, 4);
    t.month = num(4, 2);
    t.day = num(6, 2);
    t.hour = num(8, 2);
    t.minute = num(10, 2);
    t.second = num(12, 2);
    if (!t.valid()) fail(Errc::MalformedTime, "timestamp fields out of range: " + text);
    return t;
}

Value encode_time(const Time& t) {
    if (!t.valid()) fail(Errc::MalformedTime, "timestamp fields out of range");
    Value v;
    v.tag = Tag::universal(kTagGeneralizedTime);
    v.content = to_bytes(t.to_generalized());
    return v;
}

Time decode_time(const Value& v) { return v.as_time(); }

// ---- Value factories ----

Value Value::boolean(bool b) {
    Value v;
    v.tag = Tag::universal(kTagBoolean);
    v.content = {b ? uint8_t{0xFF} : uint8_t{0x00}};
    return v;
}

Value Value::integer(int64_t n) {
    Value v;
    v.tag = Tag::universal(kTagInteger);
    // Minimal two's-complement, big-endian.
    uint64_t u = static_cast<uint64_t>(n);
    uint8_t raw[8];
    for (int i = 7; i >= 0; --i) {
        raw[i] = static_cast<uint8_t>(u & 0xFF);
        u >>= 8;
    }
    size_t start = 0;
    while (start < 7) {
        bool sign_bit = (raw[start + 1] & 0x80) != 0;
        if (raw[start] == 0x00 && !sign_bit) { ++start; continue; }
        if (raw[start] == 0xFF && sign_bit) { ++start; continue; }
        break;
    }
    v.content.assign(raw + start, raw + 8);
    return v;
}

Value Value::bit_string(ByteView bits) {
    Value v;
    v.tag = Tag::universal(kTagBitString);
    v.content.push_back(0x00);
    append(v.content, bits);
    return v;
}

Value Value::octet_string(ByteView bytes) {
    Value v;
    v.tag = Tag::universal(kTagOctetString);
    v.content = to_bytes(bytes);
    return v;
}

Value Value::null() {
    Value v;
    v.tag = Tag::universal(kTagNull);
    return v;
}

Value Value::oid(const Oid& oid) {
    Value v;
    v.tag = Tag::universal(kTagOid);
    v.content = encode_oid_content(oid);
    return v;
}

Value Value::utf8(const std::string& text) {
    Value v;
    v.tag = Tag::universal(kTagUtf8String);
    v.content = to_bytes(text);
    return v;
}

Value Value::printable(const std::string& text) {
    Value v;
    v.tag = Tag::universal(kTagPrintableString);
    v.content = to_bytes(text);
    return v;
}

Value Value::time(const Time& t) { return encode_time(t); }

Value Value::sequence(std::vector<Value> elems) {
    Value v;
    v.tag = Tag::universal(kTagSequence, true);
    v.children = std::move(elems);
    return v;
}

Value Value::set(std::vector<Value> elems) {
    Value v;
    v.tag = Tag::universal(kTagSet, true);
    v.children = std::move(elems);
    return v;
}

Value Value::context(uint32_t number, std::vector<Value> elems) {
    Value v;
    v.tag = Tag::context(number, true);
    v.children = std::move(elems);
    return v;
}

Value Value::context_primitive(uint32_t number, ByteView bytes) {
    Value v;
    v.tag = Tag::context(number, false);
    v.content = to_bytes(bytes);
    return v;
}

// ---- Value readers ----

namespace {
void require_tag(const Value& v, uint32_t number, const char* what) {
    if (v.tag.cls != TagClass::Universal || v.tag.number != number) {
        fail(Errc::MalformedContent, std::string("expected ") + what);
    }
}
}  // namespace

bool Value::as_boolean() const {
    require_tag(*this, kTagBoolean, "BOOLEAN");
    return content.at(0) != 0x00;
}

int64_t Value::as_int64() const {
    require_tag(*this, kTagInteger, "INTEGER");
    if (content.size() > 8) fail(Errc::MalformedContent, "INTEGER wider than 64 bits");
    uint64_t u = (content[0] & 0x80) ? ~uint64_t{0} : 0;
    for (uint8_t b : content) u = (u << 8) | b;
    return static_cast<int64_t>(u);
}

uint64_t Value::as_positive_int64() const {
    int64_t n = as_int64();
    if (n <= 0) fail(Errc::MalformedContent, "INTEGER must be positive");
    return static_cast<uint64_t>(n);
}

ByteView Value::as_octets() const {
    require_tag(*this, kTagOctetString, "OCTET STRING");
    return content;
}

ByteView Value::bit_string_bytes() const {
    require_tag(*this, kTagBitString, "BIT STRING");
    if (content.empty() || content[0] != 0) {
        fail(Errc::MalformedContent, "expected byte-aligned BIT STRING");
    }
    return ByteView(content).subspan(1);
}

Oid Value::as_oid() const {
    require_tag(*this, kTagOid, "OBJECT IDENTIFIER");
    return decode_oid_content(content);
}

std::string Value::as_text() const {
    if (tag.cls != TagClass::Universal ||
        (tag.number != kTagUtf8String && tag.number != kTagPrintableString)) {
        fail(Errc::MalformedContent, "expected a string type");
    }
    return std::string(content.begin(), content.end());
}

Time Value::as_time() const {
    require_tag(*this, kTagGeneralizedTime, "GeneralizedTime");
    return Time::parse_generalized(std::string(content.begin(), content.end()));
}

}  // namespace pmikit::der
