#pragma once

#include <map>

#include "nsb/contracts/slice_request.h"
#include "nsb/ledger/world_state.h"

namespace nsb::workload {

using contracts::SliceVector;
using contracts::TenantId;

// Greedy counterparty selection for OPEN slice requests within one channel.
//
// Projections use the committed state minus amounts reserved by SRs that
// are endorsed but not yet resolved, so concurrent requests spread over
// counterparties instead of piling onto the same one.
class Matchmaker {
 public:
  explicit Matchmaker(const contracts::TenantDirectory& dir) : dir_(dir) {}

  // ACQUIRE: the freer with the largest projected free intent; RELEASE: the
  // seeker with the largest projected need. Tenants with no SR in flight are
  // preferred over busy ones; ties go to the smaller id. Falls back to the
  // registry pool when no tenant qualifies.
  TenantId resolve(const contracts::SliceRequest& sr, const ledger::WorldState& committed) const;

  // Smallest, over resource types, of what `id` could still give or take.
  std::int64_t projected_free(TenantId id, const ledger::WorldState& committed) const;
  std::int64_t projected_need(TenantId id, const ledger::WorldState& committed) const;

  void reserve(TenantId giver, TenantId receiver, const SliceVector& amounts);
  void release(TenantId giver, TenantId receiver, const SliceVector& amounts);

 private:
  const contracts::TenantDirectory& dir_;
  std::map<TenantId, SliceVector> reserved_give_;
  std::map<TenantId, SliceVector> reserved_take_;
};

}  // namespace nsb::workload
