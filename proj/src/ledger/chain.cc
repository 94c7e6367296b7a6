#include "nsb/ledger/chain.h"

#include "nsb/ledger/validator.h"

namespace nsb::ledger {

std::optional<std::uint64_t> first_invalid_block(std::span<const Block> chain) {
  Digest prev = kZeroDigest;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Block& b = chain[i];
    const Digest recomputed = hash_block(b);
    if (b.height != i || b.prev_hash != prev || b.hash != recomputed) {
      return i;
    }
    prev = recomputed;
  }
  return std::nullopt;
}

bool verify_chain(std::span<const Block> chain) {
  return !chain.empty() && !first_invalid_block(chain).has_value();
}

std::size_t serialized_size(const Block& block) {
  return encode_block(block).size();
}

const Block& Ledger::bootstrap(Block genesis) {
  if (bootstrapped()) {
    throw AlreadyBootstrapped("channel already has a genesis block");
  }
  genesis.height = 0;
  genesis.prev_hash = kZeroDigest;
  genesis.validity.assign(genesis.transactions.size(), TxValidity::kCommitted);
  genesis.hash = hash_block(genesis);
  apply_genesis(state_, genesis);
  total_bytes_ += serialized_size(genesis);
  chain_.push_back(std::move(genesis));
  return chain_.back();
}

const Block& Ledger::commit(std::vector<Transaction> transactions,
                            SimTime cut_time, std::vector<TxValidity> pre_flags) {
  if (!bootstrapped()) throw HeightMismatch("ledger has no genesis block");
  Block block;
  block.height = chain_.back().height + 1;
  block.prev_hash = chain_.back().hash;
  block.transactions = std::move(transactions);
  block.validity = std::move(pre_flags);
  block.validity.resize(block.transactions.size(), TxValidity::kCommitted);
  block.cut_time = cut_time;
  validate_and_commit(state_, block);
  block.hash = hash_block(block);
  total_bytes_ += serialized_size(block);
  chain_.push_back(std::move(block));
  return chain_.back();
}

}  // namespace nsb::ledger
