#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "nsb/common/crypto.h"

namespace nsb {

using Rng = std::mt19937_64;

// Child seed = first 8 bytes of SHA-256(base ‖ label). Gives independent,
// reproducible streams per component without coordinating offsets.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

// 32-byte seed material for key derivation.
Digest derive_key_seed(std::uint64_t base, std::string_view label);

inline Rng make_rng(std::uint64_t base, std::string_view label) {
  return Rng(derive_seed(base, label));
}

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace nsb
