/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/bytes.hpp"

#include <array>
#include <stdexcept>

namespace pmikit {

static const char* kHexDigits = "0123456789abcdef";

std::string hex_encode(ByteView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0F]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes hex_decode(const std::string& hex) {
    if (hex.size() % 2 != 0) {
        throw std::invalid_argument("hex string has odd length");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("non-hex character in input");
        }
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

static const char* kB64Alphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(ByteView data) {
    std::string out;
    out.reserve(((data.size() + 2) / 3) * 4);
    size_t i = 0;
    while (i + 3 <= data.size()) {
        uint32_t accum = (uint32_t(data[i]) << 16) | (uint32_t(data[i + 1]) << 8) | data[i + 2];
        out.push_back(kB64Alphabet[(accum >> 18) & 0x3F]);
        out.push_back(kB64Alphabet[(accum >> 12) & 0x3F]);
        out.push_back(kB64Alphabet[(accum >> 6) & 0x3F]);
        out.push_back(kB64Alphabet[accum & 0x3F]);
        i += 3;
    }
    size_t rest = data.size() - i;
    if (rest == 1) {
        uint32_t accum = uint32_t(data[i]) << 16;
        out.push_back(kB64Alphabet[(accum >> 18) & 0x3F]);
        out.push_back(kB64Alphabet[(accum >> 12) & 0x3F]);
        out.push_back('=');
        out.push_back('=');
    } else if (rest == 2) {
        uint32_t accum = (uint32_t(data[i]) << 16) | (uint32_t(data[i + 1]) << 8);
        out.push_back(kB64Alphabet[(accum >> 18) & 0x3F]);
        out.push_back(kB64Alphabet[(accum >> 12) & 0x3F]);
        out.push_back(kB64Alphabet[(accum >> 6) & 0x3F]);
        out.push_back('=');
    }
    return out;
}

static int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

Bytes base64_decode(const std::string& text) {
    std::string compact;
    compact.reserve(text.size());
    for (char c : text) {
        if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        compact.push_back(c);
    }
    if (compact.size() % 4 != 0) {
        throw std::invalid_argument("base64 length not a multiple of 4");
    }
    Bytes out;
    out.reserve((compact.size() / 4) * 3);
    for (size_t i = 0; i < compact.size(); i += 4) {
        int v[4];
        int pad = 0;
        for (int k = 0; k < 4; ++k) {
            char c = compact[i + k];
            if (c == '=') {
                // Padding is only legal in the last group, positions 2 and 3.
                if (i + 4 != compact.size() || k < 2) {
                    throw std::invalid_argument("misplaced base64 padding");
                }
                v[k] = 0;
                ++pad;
            } else {
                if (pad > 0) throw std::invalid_argument("data after base64 padding");
                v[k] = b64_value(c);
                if (v[k] < 0) throw std::invalid_argument("invalid base64 character");
            }
        }
        uint32_t accum = (uint32_t(v[0]) << 18) | (uint32_t(v[1]) << 12) |
                         (uint32_t(v[2]) << 6) | uint32_t(v[3]);
        out.push_back(static_cast<uint8_t>(accum >> 16));
        if (pad < 2) out.push_back(static_cast<uint8_t>(accum >> 8));
        if (pad < 1) out.push_back(static_cast<uint8_t>(accum));
    }
    return out;
}

}  // namespace pmikit
