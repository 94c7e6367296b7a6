#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nsb/ledger/types.h"
#include "nsb/ledger/world_state.h"

namespace nsb::ledger {

// True iff heights run 0,1,2,..., every stored hash matches its recomputed
// hash, and every prev_hash equals the predecessor's recomputed hash. The
// genesis block must point at the all-zero digest.
bool verify_chain(std::span<const Block> chain);

// Height of the first block that breaks the rules above, or nullopt.
std::optional<std::uint64_t> first_invalid_block(std::span<const Block> chain);

class AlreadyBootstrapped : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One channel's chain together with the world state derived from it.
class Ledger {
 public:
  // Installs the genesis block. A channel has exactly one genesis; a second
  // call throws AlreadyBootstrapped.
  const Block& bootstrap(Block genesis);

  // Builds the next block from an ordered batch, validates it, seals it with
  // its hash and appends it. `pre_flags`, when non-empty, carries
  // contract-layer collision flags per transaction.
  const Block& commit(std::vector<Transaction> transactions, SimTime cut_time,
                      std::vector<TxValidity> pre_flags = {});

  const std::vector<Block>& chain() const { return chain_; }
  const WorldState& state() const { return state_; }
  bool bootstrapped() const { return !chain_.empty(); }
  std::uint64_t total_bytes() const { return total_bytes_; }

 private:
  std::vector<Block> chain_;
  WorldState state_;
  std::uint64_t total_bytes_ = 0;
};

std::size_t serialized_size(const Block& block);

}  // namespace nsb::ledger
