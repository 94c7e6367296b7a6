#include "nsb/common/crypto.h"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace nsb {
namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
  });
}

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  ensure_sodium();
  Digest out;
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

KeyPair KeyPair::from_seed(const Digest& seed) {
  static_assert(crypto_sign_SEEDBYTES == 32);
  static_assert(crypto_sign_PUBLICKEYBYTES == 32);
  static_assert(crypto_sign_SECRETKEYBYTES == 64);
  ensure_sodium();
  KeyPair kp;
  crypto_sign_seed_keypair(kp.public_id_.data(), kp.signing_secret_.data(),
                           seed.data());
  return kp;
}

Signature KeyPair::sign(std::span<const std::uint8_t> message) const {
  Signature sig;
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                       signing_secret_.data());
  return sig;
}

bool verify_signature(const PublicId& signer,
                      std::span<const std::uint8_t> message,
                      const Signature& signature) {
  ensure_sodium();
  return crypto_sign_verify_detached(signature.data(), message.data(),
                                     message.size(), signer.data()) == 0;
}

}  // namespace nsb
