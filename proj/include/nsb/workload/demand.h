#pragma once

#include <optional>
#include <string>

#include "nsb/common/rng.h"
#include "nsb/contracts/slice_request.h"

namespace nsb::workload {

// low + (high − low) × Beta(alpha, beta). alpha < beta skews right.
struct DemandDistribution {
  double low = 0.1;
  double high = 4.0;
  double alpha = 2.0;
  double beta = 5.0;

  // Empty when 0 <= low <= high and both shapes are positive.
  std::string validate() const;
  double sample(Rng& rng) const;
  double mean() const { return low + (high - low) * alpha / (alpha + beta); }
};

// Draws ρ, η, γ independently from `dist`. Direction follows the tenant's
// intent: seekers acquire, freers release. nullopt when `remaining_intent`
// is zero in some type, i.e. the tenant is satisfied and is skipped.
std::optional<contracts::SliceRequest> generate_sr(const contracts::TenantAccount& tenant,
                                                   const contracts::SliceVector& remaining_intent,
                                                   const DemandDistribution& dist, Rng& rng);

}  // namespace nsb::workload
