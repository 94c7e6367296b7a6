#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsb/common/codec.h"
#include "nsb/common/crypto.h"
#include "nsb/common/sim_time.h"

namespace nsb::ledger {

using TenantId = std::uint32_t;
using ResourceType = std::uint32_t;

// Owner id of the per-type registry (the IB's unassigned pool).
inline constexpr TenantId kRegistryOwner = std::numeric_limits<TenantId>::max();

struct StateKey {
  TenantId owner = 0;
  ResourceType resource = 0;

  bool is_registry() const { return owner == kRegistryOwner; }
  auto operator<=>(const StateKey&) const = default;
};

std::string to_string(const StateKey& key);

// MVCC version: (block height, position in block). (0,0) marks genesis.
struct Version {
  std::uint64_t block_height = 0;
  std::uint32_t tx_index = 0;

  auto operator<=>(const Version&) const = default;
};

struct ReadEntry {
  StateKey key;
  Version version;
  bool operator==(const ReadEntry&) const = default;
};

struct WriteEntry {
  StateKey key;
  std::int64_t value = 0;
  bool operator==(const WriteEntry&) const = default;
};

// Contract invocation: contract name plus its canonical argument encoding.
struct Payload {
  std::string contract;
  Bytes args;
  bool operator==(const Payload&) const = default;
};

struct Transaction {
  std::string tx_id;
  PublicId sender{};
  std::string channel;
  Payload payload;
  std::vector<ReadEntry> read_set;
  std::vector<WriteEntry> write_set;
  SimTime submit_time = 0;
  Signature signature{};

  bool operator==(const Transaction&) const = default;
};

using TxHandle = std::shared_ptr<const Transaction>;

// Bytes covered by the signature: every field except the signature.
Bytes signing_bytes(const Transaction& tx);
void encode_transaction(Encoder& enc, const Transaction& tx);
Transaction decode_transaction(Decoder& dec);

// Throws std::invalid_argument if tx.sender differs from key.public_id().
Transaction sign_transaction(Transaction tx, const KeyPair& key);
bool verify_signature(const Transaction& tx);

enum class TxValidity : std::uint8_t {
  kCommitted = 0,
  kRwConflict = 1,
  kSrCollision = 2,
  kBadSignature = 3,
};

std::string_view to_string(TxValidity v);
std::optional<TxValidity> validity_from_string(std::string_view s);

struct Block {
  std::uint64_t height = 0;
  Digest prev_hash{};
  std::vector<Transaction> transactions;
  std::vector<TxValidity> validity;
  SimTime cut_time = 0;
  Digest hash{};
};

// Serialization of every field before `hash`.
Bytes block_body_bytes(const Block& block);
// Full canonical serialization including the stored hash.
Bytes encode_block(const Block& block);
Block decode_block(std::span<const std::uint8_t> bytes);

Digest hash_block(const Block& block);

}  // namespace nsb::ledger
