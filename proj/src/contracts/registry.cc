#include "nsb/contracts/registry.h"

#include <stdexcept>

namespace nsb::contracts {

std::vector<ledger::WriteEntry> init_registry(const std::vector<std::int64_t>& r) {
  if (r.empty()) throw std::invalid_argument("registry needs at least one resource type");
  std::vector<ledger::WriteEntry> writes;
  for (ResourceType i = 0; i < r.size(); ++i) {
    if (r[i] <= 0) throw std::invalid_argument("registry amounts must be positive");
    writes.push_back({{ledger::kRegistryOwner, i}, r[i]});
  }
  return writes;
}

ledger::Block make_genesis(const KeyPair& ib_key, const std::string& channel,
                           const std::vector<std::int64_t>& r, SimTime at) {
  ledger::Transaction tx;
  tx.tx_id = channel + "/genesis";
  tx.sender = ib_key.public_id();
  tx.channel = channel;
  Encoder enc;
  enc.put_u32(static_cast<std::uint32_t>(r.size()));
  for (std::int64_t v : r) enc.put_i64(v);
  tx.payload = ledger::Payload{std::string(kRegistryContract), enc.take()};
  tx.write_set = init_registry(r);
  tx.submit_time = at;

  ledger::Block genesis;
  genesis.cut_time = at;
  genesis.transactions.push_back(ledger::sign_transaction(std::move(tx), ib_key));
  return genesis;
}

ContractEffect opening_effect(const ledger::WorldState& snapshot,
                              const std::map<TenantId, SliceVector>& allocations) {
  ContractEffect effect;
  SliceVector used{};
  for (const auto& [id, alloc] : allocations) {
    if (id == ledger::kRegistryOwner) throw std::invalid_argument("registry cannot be a tenant");
    for (ResourceType r = 0; r < kSliceResources; ++r) {
      if (alloc[r] < 0) throw std::invalid_argument("negative opening allocation");
      used[r] += alloc[r];
    }
  }
  for (ResourceType r = 0; r < kSliceResources; ++r) {
    const ledger::StateKey key{ledger::kRegistryOwner, r};
    const std::int64_t pool = snapshot.value(key);
    if (used[r] > pool) throw std::invalid_argument("opening allocation exceeds the registry");
    effect.read_set.push_back({key, snapshot.version(key)});
    effect.write_set.push_back({key, pool - used[r]});
  }
  for (const auto& [id, alloc] : allocations) {
    for (ResourceType r = 0; r < kSliceResources; ++r) {
      const ledger::StateKey key{id, r};
      effect.write_set.push_back({key, snapshot.value(key) + alloc[r]});
    }
  }
  return effect;
}

ledger::Payload encode_opening(const std::map<TenantId, SliceVector>& allocations) {
  Encoder enc;
  enc.put_u32(static_cast<std::uint32_t>(allocations.size()));
  for (const auto& [id, alloc] : allocations) {
    enc.put_u32(id);
    for (std::int64_t a : alloc) enc.put_i64(a);
  }
  return ledger::Payload{std::string(kOpeningContract), enc.take()};
}

}  // namespace nsb::contracts
