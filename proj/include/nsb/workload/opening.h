#pragma once

#include <map>
#include <vector>

#include "nsb/common/rng.h"
#include "nsb/contracts/slice_request.h"
#include "nsb/ledger/world_state.h"
#include "nsb/workload/config.h"

namespace nsb::workload {

struct OpeningPlan {
  contracts::TenantDirectory tenants;
  std::map<contracts::TenantId, contracts::SliceVector> allocations;
  // Registry plus allocations applied directly, as the ledger will hold them
  // once the opening transaction commits.
  ledger::WorldState state;
};

// Equal split of r over n tenants: floor(r/n) each, and the first r mod n
// tenants (by id) get one extra unit. Throws std::invalid_argument if n == 0
// or n > r.
std::vector<std::int64_t> equal_split(std::int64_t r, std::size_t n);

// Opening phase of one channel. Tenants 0..N−1 receive the equal split of
// registry_units per type. A random seeker_fraction of them (chosen with
// `rng`) seek, the rest free; each draws |target_delta| per type uniformly
// in [0, intent_fraction_max] % of its allocation. Public ids are filled in
// by the caller.
OpeningPlan run_opening(const ScenarioConfig& cfg, Rng& rng);

}  // namespace nsb::workload
