// Random profile-conformant value generators shared by the property tests.

#ifndef PMIKIT_TESTS_GENERATORS_HPP_
#define PMIKIT_TESTS_GENERATORS_HPP_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "pmikit/der.hpp"

namespace testgen {

using pmikit::Bytes;
using Rng = std::mt19937_64;

inline size_t pick(Rng& rng, size_t lo, size_t hi) {
    return std::uniform_int_distribution<size_t>(lo, hi)(rng);
}

inline Bytes random_bytes(Rng& rng, size_t len) {
    Bytes out(len);
    for (auto& b : out) b = static_cast<uint8_t>(rng());
    return out;
}

inline pmikit::der::Oid random_oid(Rng& rng) {
    pmikit::der::Oid oid;
    uint32_t a0 = static_cast<uint32_t>(pick(rng, 0, 2));
    uint32_t a1 = a0 < 2 ? static_cast<uint32_t>(pick(rng, 0, 39))
                         : static_cast<uint32_t>(pick(rng, 0, 200));
    oid.arcs = {a0, a1};
    size_t extra = pick(rng, 0, 5);
    for (size_t i = 0; i < extra; ++i) {
        oid.arcs.push_back(static_cast<uint32_t>(pick(rng, 0, 1u << 20)));
    }
    return oid;
}

inline pmikit::der::Time random_time(Rng& rng) {
    pmikit::der::Time t;
    t.year = static_cast<int>(pick(rng, 1950, 2449));
    t.month = static_cast<int>(pick(rng, 1, 12));
    t.day = static_cast<int>(pick(rng, 1, 28));
    t.hour = static_cast<int>(pick(rng, 0, 23));
    t.minute = static_cast<int>(pick(rng, 0, 59));
    t.second = static_cast<int>(pick(rng, 0, 59));
    return t;
}

inline std::string random_utf8(Rng& rng) {
    static const char* kSamples[] = {"alpha", "beta-2", "räv", "日本", "x", "", "policy/ops"};
    std::string s = kSamples[pick(rng, 0, 6)];
    size_t extra = pick(rng, 0, 6);
    for (size_t i = 0; i < extra; ++i) s.push_back(static_cast<char>(pick(rng, 0x20, 0x7E)));
    return s;
}

inline std::string random_printable(Rng& rng) {
    static const std::string kAlphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789 '()+,-./:=?";
    std::string s;
    size_t len = pick(rng, 0, 12);
    for (size_t i = 0; i < len; ++i) s.push_back(kAlphabet[pick(rng, 0, kAlphabet.size() - 1)]);
    return s;
}

// Random supported-profile DER value; constructed depth is bounded so the
// 10k-iteration suites stay quick.
inline pmikit::der::Value random_value(Rng& rng, size_t depth = 0) {
    using pmikit::der::Value;
    size_t kind = pick(rng, 0, depth >= 3 ? 8 : 11);
    switch (kind) {
    case 0: return Value::boolean(pick(rng, 0, 1) == 1);
    case 1: {
        int64_t n = static_cast<int64_t>(rng());
        if (pick(rng, 0, 3) == 0) n = static_cast<int64_t>(pick(rng, 0, 255)) - 128;
        return Value::integer(n);
    }
    case 2: return Value::bit_string(random_bytes(rng, pick(rng, 0, 12)));
    case 3: return Value::octet_string(random_bytes(rng, pick(rng, 0, 24)));
    case 4: return Value::null();
    case 5: return Value::oid(random_oid(rng));
    case 6: return Value::utf8(random_utf8(rng));
    case 7: return Value::printable(random_printable(rng));
    case 8: return Value::time(random_time(rng));
    default: break;
    }
    size_t count = pick(rng, 0, 4);
    std::vector<Value> children;
    for (size_t i = 0; i < count; ++i) children.push_back(random_value(rng, depth + 1));
    if (kind == 9) return Value::sequence(std::move(children));
    if (kind == 10) {
        // SET children must be in canonical encoding order.
        std::sort(children.begin(), children.end(),
                  [](const Value& a, const Value& b) {
                      return pmikit::der::encode(a) < pmikit::der::encode(b);
                  });
        return Value::set(std::move(children));
    }
    return Value::context(static_cast<uint32_t>(pick(rng, 0, 9)), std::move(children));
}

}  // namespace testgen

#endif  // PMIKIT_TESTS_GENERATORS_HPP_
