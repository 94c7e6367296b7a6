#include "nsb/ledger/world_state.h"

namespace nsb::ledger {

std::optional<VersionedValue> WorldState::get(const StateKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::int64_t WorldState::value(const StateKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.value;
}

Version WorldState::version(const StateKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? Version{} : it->second.version;
}

void WorldState::put(const StateKey& key, std::int64_t value, Version version) {
  entries_[key] = VersionedValue{value, version};
}

std::vector<std::int64_t> WorldState::totals_per_type() const {
  std::vector<std::int64_t> totals(capacity_.size(), 0);
  for (const auto& [key, vv] : entries_) {
    if (key.resource >= totals.size()) totals.resize(key.resource + 1, 0);
    totals[key.resource] += vv.value;
  }
  return totals;
}

bool WorldState::check_conservation() const {
  for (const auto& [key, vv] : entries_) {
    if (vv.value < 0) return false;
  }
  return totals_per_type() == capacity_;
}

Bytes WorldState::serialize() const {
  Encoder enc;
  enc.put_u64(height_.value_or(0));
  enc.put_u32(static_cast<std::uint32_t>(capacity_.size()));
  for (std::int64_t c : capacity_) enc.put_i64(c);
  enc.put_u32(static_cast<std::uint32_t>(entries_.size()));
  for (const auto& [key, vv] : entries_) {
    enc.put_u32(key.owner);
    enc.put_u32(key.resource);
    enc.put_i64(vv.value);
    enc.put_u64(vv.version.block_height);
    enc.put_u32(vv.version.tx_index);
  }
  return enc.take();
}

}  // namespace nsb::ledger
