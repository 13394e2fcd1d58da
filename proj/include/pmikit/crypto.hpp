/*
 * Copyright (C) 2026 The pmikit Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef PMIKIT_CRYPTO_HPP_
#define PMIKIT_CRYPTO_HPP_

#include <array>
#include <stdexcept>

#include "pmikit/bytes.hpp"
#include "pmikit/der.hpp"

namespace pmikit::crypto {

class UnrecognizedAlgorithm : public std::runtime_error {
public:
    explicit UnrecognizedAlgorithm(const std::string& what) : std::runtime_error(what) {}
};

class BadKey : public std::runtime_error {
public:
    explicit BadKey(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic keyed-digest scheme for fixtures. public == private, and a
// signature over m under key k is digest(k || m). Test-only by construction;
// real schemes can be registered behind the same contract.
inline const der::Oid kMockSignatureOid{1, 3, 6, 1, 4, 1, 57264, 99, 1};

inline constexpr size_t kDigestSize = 32;
inline constexpr size_t kMaxKeyBytes = 64;

using Digest = std::array<uint8_t, kDigestSize>;

// SHA-256.
Digest digest(ByteView data);

inline Bytes digest_bytes(ByteView data) {
    Digest d = digest(data);
    return Bytes(d.begin(), d.end());
}

struct AlgorithmId {
    der::Oid oid;

    bool operator==(const AlgorithmId&) const = default;
    bool recognized() const { return oid == kMockSignatureOid; }

    static AlgorithmId mock() { return AlgorithmId{kMockSignatureOid}; }
};

struct KeyPair {
    Bytes public_key;
    Bytes private_key;
    AlgorithmId algorithm;
};

struct Signature {
    AlgorithmId algorithm;
    Bytes bytes;

    bool operator==(const Signature&) const = default;
};

// Deterministic mock keypair derived from a seed (1..64 byte symmetric key).
KeyPair derive_mock_keypair(ByteView seed);

// Throws UnrecognizedAlgorithm for unknown schemes and BadKey on a key that
// violates the scheme's shape. Deterministic: same (key, message) -> same
// signature.
Signature sign(const KeyPair& key, ByteView message);

// Returns false on any mismatch; throws UnrecognizedAlgorithm when it cannot
// judge the scheme at all (never silently mapped to false).
bool verify(ByteView public_key, const AlgorithmId& algorithm, ByteView message,
            const Signature& signature);

}  // namespace pmikit::crypto

#endif  // PMIKIT_CRYPTO_HPP_
