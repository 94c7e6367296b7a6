#include "nsb/workload/demand.h"

#include <algorithm>
#include <random>

namespace nsb::workload {

std::string DemandDistribution::validate() const {
  if (!(low >= 0.0) || !(high >= low)) return "demand bounds must satisfy 0 <= low <= high";
  if (!(alpha > 0.0) || !(beta > 0.0)) return "demand shapes must be positive";
  return {};
}

double DemandDistribution::sample(Rng& rng) const {
  if (high == low) return low;
  // Beta(a, b) = X / (X + Y) with X ~ Gamma(a), Y ~ Gamma(b).
  const double x = std::gamma_distribution<double>(alpha, 1.0)(rng);
  const double y = std::gamma_distribution<double>(beta, 1.0)(rng);
  const double b = x + y > 0.0 ? x / (x + y) : 0.0;
  return std::clamp(low + (high - low) * b, low, high);
}

std::optional<contracts::SliceRequest> generate_sr(const contracts::TenantAccount& tenant,
                                                   const contracts::SliceVector& remaining_intent,
                                                   const DemandDistribution& dist, Rng& rng) {
  for (std::int64_t r : remaining_intent) {
    if (r <= 0) return std::nullopt;
  }
  contracts::SliceRequest sr;
  sr.requester = tenant.id;
  sr.direction = tenant.seeker() ? contracts::Direction::kAcquire : contracts::Direction::kRelease;
  sr.rho = dist.sample(rng);
  sr.eta = dist.sample(rng);
  sr.gamma = dist.sample(rng);
  return sr;
}

}  // namespace nsb::workload
