#include "nsb/ledger/validator.h"

#include <map>
#include <string>

namespace nsb::ledger {

void apply_genesis(WorldState& state, const Block& genesis) {
  if (state.height().has_value()) {
    throw HeightMismatch("genesis applied to a non-empty state");
  }
  if (genesis.height != 0) {
    throw HeightMismatch("genesis block must have height 0");
  }
  std::vector<std::int64_t> capacity;
  for (const Transaction& tx : genesis.transactions) {
    for (const WriteEntry& w : tx.write_set) {
      state.put(w.key, w.value, Version{0, 0});
    }
  }
  for (const auto& [key, vv] : state.entries()) {
    if (key.resource >= capacity.size()) capacity.resize(key.resource + 1, 0);
    capacity[key.resource] += vv.value;
  }
  state.set_capacity(std::move(capacity));
  state.set_height(0);
}

namespace {

bool reads_current(const WorldState& state, const Transaction& tx) {
  for (const ReadEntry& r : tx.read_set) {
    if (state.version(r.key) != r.version) return false;
  }
  return true;
}

bool writes_conserve(const WorldState& state, const Transaction& tx) {
  std::map<ResourceType, std::int64_t> delta;
  for (const WriteEntry& w : tx.write_set) {
    if (w.value < 0) return false;
    delta[w.key.resource] += w.value - state.value(w.key);
  }
  for (const auto& [type, d] : delta) {
    if (d != 0) return false;
  }
  return true;
}

}  // namespace

std::vector<TxValidity> validate_and_commit(WorldState& state, Block& block) {
  const std::uint64_t expected = state.height().has_value() ? *state.height() + 1 : 0;
  if (!state.height().has_value() || block.height != expected) {
    throw HeightMismatch("block height " + std::to_string(block.height) +
                         " does not follow committed height " +
                         (state.height() ? std::to_string(*state.height())
                                         : std::string("<none>")));
  }
  block.validity.resize(block.transactions.size(), TxValidity::kCommitted);

  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const Transaction& tx = block.transactions[i];
    TxValidity& flag = block.validity[i];
    if (flag == TxValidity::kSrCollision) continue;
    if (!verify_signature(tx)) {
      flag = TxValidity::kBadSignature;
      continue;
    }
    if (!reads_current(state, tx)) {
      flag = TxValidity::kRwConflict;
      continue;
    }
    if (!writes_conserve(state, tx)) {
      flag = TxValidity::kSrCollision;
      continue;
    }
    flag = TxValidity::kCommitted;
    const Version version{block.height, static_cast<std::uint32_t>(i)};
    for (const WriteEntry& w : tx.write_set) state.put(w.key, w.value, version);
  }
  state.set_height(block.height);
  return block.validity;
}

}  // namespace nsb::ledger
