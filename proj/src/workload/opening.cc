#include "nsb/workload/opening.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nsb/contracts/registry.h"
#include "nsb/ledger/validator.h"

namespace nsb::workload {

std::vector<std::int64_t> equal_split(std::int64_t r, std::size_t n) {
  if (n == 0) throw std::invalid_argument("cannot split among zero tenants");
  if (static_cast<std::int64_t>(n) > r) {
    throw std::invalid_argument("more tenants than registry units");
  }
  const auto count = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> out(n, r / count);
  for (std::int64_t k = 0; k < r % count; ++k) ++out[static_cast<std::size_t>(k)];
  return out;
}

OpeningPlan run_opening(const ScenarioConfig& cfg, Rng& rng) {
  const std::size_t n = cfg.consortium_size;
  const std::vector<std::int64_t> r(contracts::kSliceResources, cfg.registry_units);
  const auto split = equal_split(cfg.registry_units, n);

  std::vector<contracts::TenantId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  const auto seekers = static_cast<std::size_t>(std::floor(cfg.seeker_fraction * static_cast<double>(n)));
  std::vector<bool> is_seeker(n, false);
  for (std::size_t k = 0; k < seekers; ++k) is_seeker[ids[k]] = true;

  OpeningPlan plan;
  for (contracts::TenantId id = 0; id < n; ++id) {
    contracts::TenantAccount acc;
    acc.id = id;
    for (std::size_t t = 0; t < contracts::kSliceResources; ++t) {
      acc.base[t] = split[id];
      const double pct = uniform01(rng) * cfg.intent_fraction_max;
      const std::int64_t mag = std::llround(pct / 100.0 * static_cast<double>(acc.base[t]));
      acc.target_delta[t] = is_seeker[id] ? mag : -mag;
    }
    plan.allocations[id] = acc.base;
    plan.tenants.add(acc);
  }

  ledger::Block genesis;
  ledger::Transaction reg;
  reg.write_set = contracts::init_registry(r);
  genesis.transactions.push_back(std::move(reg));
  ledger::apply_genesis(plan.state, genesis);
  for (const auto& w : contracts::opening_effect(plan.state, plan.allocations).write_set) {
    plan.state.put(w.key, w.value, ledger::Version{1, 0});
  }
  plan.state.set_height(1);
  return plan;
}

}  // namespace nsb::workload
