#include "nsb/workload/matchmaker.h"

#include <algorithm>
#include <limits>

namespace nsb::workload {
namespace {

const SliceVector kZero{};

const SliceVector& lookup(const std::map<TenantId, SliceVector>& m, TenantId id) {
  auto it = m.find(id);
  return it == m.end() ? kZero : it->second;
}

void adjust(std::map<TenantId, SliceVector>& m, TenantId id, const SliceVector& amounts, int sign) {
  if (id == ledger::kRegistryOwner) return;
  SliceVector& v = m[id];
  bool zero = true;
  for (std::size_t r = 0; r < v.size(); ++r) {
    v[r] += sign * amounts[r];
    zero = zero && v[r] == 0;
  }
  if (zero) m.erase(id);
}

}  // namespace

std::int64_t Matchmaker::projected_free(TenantId id, const ledger::WorldState& committed) const {
  const SliceVector& held = lookup(reserved_give_, id);
  std::int64_t out = std::numeric_limits<std::int64_t>::max();
  for (contracts::ResourceType r = 0; r < contracts::kSliceResources; ++r) {
    out = std::min(out, contracts::available(committed, dir_, id, r) - held[r]);
  }
  return out;
}

std::int64_t Matchmaker::projected_need(TenantId id, const ledger::WorldState& committed) const {
  const SliceVector& held = lookup(reserved_take_, id);
  std::int64_t out = std::numeric_limits<std::int64_t>::max();
  for (contracts::ResourceType r = 0; r < contracts::kSliceResources; ++r) {
    out = std::min(out, contracts::remaining_need(committed, dir_, id, r) - held[r]);
  }
  return out;
}

TenantId Matchmaker::resolve(const contracts::SliceRequest& sr,
                             const ledger::WorldState& committed) const {
  const bool acquire = sr.direction == contracts::Direction::kAcquire;
  const auto& reserved = acquire ? reserved_give_ : reserved_take_;
  // Best idle candidate (no SR in flight) first, best busy one as fallback.
  TenantId best[2] = {ledger::kRegistryOwner, ledger::kRegistryOwner};
  std::int64_t best_score[2] = {0, 0};
  for (const auto& [id, acc] : dir_.accounts()) {
    if (id == sr.requester) continue;
    if (acquire ? !acc.freer() : !acc.seeker()) continue;
    const std::int64_t score = acquire ? projected_free(id, committed) : projected_need(id, committed);
    const int busy = reserved.count(id) ? 1 : 0;
    if (score > best_score[busy]) {
      best_score[busy] = score;
      best[busy] = id;
    }
  }
  return best[0] != ledger::kRegistryOwner ? best[0] : best[1];
}

void Matchmaker::reserve(TenantId giver, TenantId receiver, const SliceVector& amounts) {
  adjust(reserved_give_, giver, amounts, +1);
  adjust(reserved_take_, receiver, amounts, +1);
}

void Matchmaker::release(TenantId giver, TenantId receiver, const SliceVector& amounts) {
  adjust(reserved_give_, giver, amounts, -1);
  adjust(reserved_take_, receiver, amounts, -1);
}

}  // namespace nsb::workload
