/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_BYTES_HPP_
#define PMIKIT_BYTES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pmikit {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline Bytes to_bytes(ByteView v) { return Bytes(v.begin(), v.end()); }

inline Bytes to_bytes(const std::string& s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(ByteView v) {
    return std::string(v.begin(), v.end());
}

inline void append(Bytes& out, ByteView more) {
    out.insert(out.end(), more.begin(), more.end());
}

std::string hex_encode(ByteView data);

// Throws std::invalid_argument on odd length or non-hex characters.
Bytes hex_decode(const std::string& hex);

std::string base64_encode(ByteView data);

// Strict alphabet, '=' padding required; whitespace is skipped.
// Throws std::invalid_argument on anything else.
Bytes base64_decode(const std::string& text);

}  // namespace pmikit

#endif  // PMIKIT_BYTES_HPP_
