#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nsb/ledger/types.h"

namespace nsb::ledger {

struct VersionedValue {
  std::int64_t value = 0;
  Version version;
  bool operator==(const VersionedValue&) const = default;
};

// Versioned key-value store of resource holdings. Values are integer
// micro-units. Absent keys read as value 0 at version (0,0).
class WorldState {
 public:
  std::optional<VersionedValue> get(const StateKey& key) const;
  std::int64_t value(const StateKey& key) const;
  Version version(const StateKey& key) const;

  void put(const StateKey& key, std::int64_t value, Version version);

  const std::map<StateKey, VersionedValue>& entries() const { return entries_; }

  // Per-type totals fixed at genesis; empty before bootstrap.
  const std::vector<std::int64_t>& capacity() const { return capacity_; }
  void set_capacity(std::vector<std::int64_t> capacity) {
    capacity_ = std::move(capacity);
  }

  std::optional<std::uint64_t> height() const { return height_; }
  void set_height(std::uint64_t h) { height_ = h; }

  // Σ holdings (tenants + registry) per type equals capacity and nothing is
  // negative.
  bool check_conservation() const;
  std::vector<std::int64_t> totals_per_type() const;

  Bytes serialize() const;

 private:
  std::map<StateKey, VersionedValue> entries_;
  std::vector<std::int64_t> capacity_;
  std::optional<std::uint64_t> height_;
};

}  // namespace nsb::ledger
