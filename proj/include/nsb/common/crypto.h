#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "nsb/common/codec.h"

namespace nsb {

using Digest = std::array<std::uint8_t, 32>;
using PublicId = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

inline constexpr Digest kZeroDigest{};

// SHA-256.
Digest sha256(std::span<const std::uint8_t> data);

// Ed25519 key pair. Signing is deterministic, so identical inputs always
// produce identical signatures, which keeps simulation output reproducible.
class KeyPair {
 public:
  // Derives the key pair from a 32-byte seed.
  static KeyPair from_seed(const Digest& seed);

  const PublicId& public_id() const { return public_id_; }
  Signature sign(std::span<const std::uint8_t> message) const;

 private:
  KeyPair() = default;

  PublicId public_id_{};
  std::array<std::uint8_t, 64> signing_secret_{};
};

bool verify_signature(const PublicId& signer,
                      std::span<const std::uint8_t> message,
                      const Signature& signature);

}  // namespace nsb
