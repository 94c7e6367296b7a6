#include "nsb/contracts/slice_request.h"

#include <cmath>
#include <limits>
#include <string>

namespace nsb::contracts {

bool SliceRequest::well_formed() const {
  const auto p = percentages();
  bool any = false;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    any = any || v > 0.0;
  }
  return any;
}

bool GeneralRequest::well_formed() const {
  if (demands.size() != prices.size() || demands.empty()) return false;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] < 0 || prices[i] < 0) return false;
  }
  return true;
}

bool TenantAccount::seeker() const {
  for (std::int64_t d : target_delta) {
    if (d > 0) return true;
  }
  return false;
}

bool TenantAccount::freer() const {
  for (std::int64_t d : target_delta) {
    if (d < 0) return true;
  }
  return false;
}

void TenantDirectory::add(TenantAccount account) {
  const TenantId id = account.id;
  accounts_.insert_or_assign(id, std::move(account));
}

const TenantAccount& TenantDirectory::at(TenantId id) const {
  const TenantAccount* a = find(id);
  if (!a) throw UnknownTenant("unknown tenant " + std::to_string(id));
  return *a;
}

const TenantAccount* TenantDirectory::find(TenantId id) const {
  auto it = accounts_.find(id);
  return it == accounts_.end() ? nullptr : &it->second;
}

SliceVector request_amounts(const TenantAccount& requester, const SliceRequest& sr) {
  SliceVector out{};
  const auto pct = sr.percentages();
  for (std::size_t r = 0; r < kSliceResources; ++r) {
    out[r] = std::llround(pct[r] / 100.0 * static_cast<double>(requester.base[r]));
  }
  return out;
}

std::int64_t available(const ledger::WorldState& state, const TenantDirectory& dir,
                       TenantId giver, ResourceType r) {
  const std::int64_t holding = state.value({giver, r});
  if (giver == ledger::kRegistryOwner) return holding;
  const std::int64_t surplus = holding - dir.at(giver).target(r);
  return surplus > 0 ? surplus : 0;
}

std::int64_t remaining_need(const ledger::WorldState& state, const TenantDirectory& dir,
                            TenantId receiver, ResourceType r) {
  if (receiver == ledger::kRegistryOwner) return std::numeric_limits<std::int64_t>::max();
  const std::int64_t gap = dir.at(receiver).target(r) - state.value({receiver, r});
  return gap > 0 ? gap : 0;
}

}  // namespace nsb::contracts
