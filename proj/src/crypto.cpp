/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "pmikit/crypto.hpp"

#include <openssl/evp.h>

namespace pmikit::crypto {

Digest digest(ByteView data) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != kDigestSize) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    return out;
}

KeyPair derive_mock_keypair(ByteView seed) {
    Digest d = digest(seed);
    Bytes key(d.begin(), d.end());
    return KeyPair{key, key, AlgorithmId::mock()};
}

static void check_mock_key(ByteView key) {
    if (key.empty() || key.size() > kMaxKeyBytes) {
        throw BadKey("mock key must be 1..64 bytes, got " + std::to_string(key.size()));
    }
}

Signature sign(const KeyPair& key, ByteView message) {
    if (!key.algorithm.recognized()) {
        throw UnrecognizedAlgorithm("cannot sign with algorithm " + key.algorithm.oid.to_string());
    }
    check_mock_key(key.private_key);
    Bytes input = key.private_key;
    append(input, message);
    return Signature{key.algorithm, digest_bytes(input)};
}

bool verify(ByteView public_key, const AlgorithmId& algorithm, ByteView message,
            const Signature& signature) {
    if (!algorithm.recognized() || !signature.algorithm.recognized()) {
        const der::Oid& oid =
            algorithm.recognized() ? signature.algorithm.oid : algorithm.oid;
        throw UnrecognizedAlgorithm("cannot verify algorithm " + oid.to_string());
    }
    if (signature.algorithm != algorithm) return false;
    if (public_key.empty() || public_key.size() > kMaxKeyBytes) return false;
    if (signature.bytes.size() != kDigestSize) return false;
    Bytes input = to_bytes(public_key);
    append(input, message);
    Digest expected = digest(input);
    return std::equal(expected.begin(), expected.end(), signature.bytes.begin());
}

}  // namespace pmikit::crypto
