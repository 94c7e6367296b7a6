#include "nsb/common/rng.h"

#include "nsb/common/codec.h"

namespace nsb {

Digest derive_key_seed(std::uint64_t base, std::string_view label) {
  Encoder enc;
  enc.put_u64(base);
  enc.put_string(label);
  return sha256(enc.bytes());
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  const Digest d = derive_key_seed(base, label);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | d[i];
  return v;
}

}  // namespace nsb
