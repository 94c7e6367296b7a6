#pragma once

#include <cstddef>
#include <cstdint>

#include "nsb/admission/instance.h"

namespace nsb::admission {

// Optimal decision. Because x collapses onto y, the problem is a
// multidimensional 0/1 knapsack over y; solved by depth-first branch and
// bound. The bound at a node is the smallest, over resource types, of the
// fractional-knapsack relaxation restricted to that type's residual capacity.
// Among optimal decisions the search keeps the first one found, which makes
// the result deterministic.
AdmissionDecision solve_exact(const AdmissionInstance& inst);

inline constexpr double kGreedyEpsilon = 1e-9;

// Admits requests in decreasing order of μ_j / (Σ_i π_i^(j) / r_i + ε) while
// they fit. Feasible, not necessarily optimal. Types with r_i = 0 count a
// non-zero demand as infinite weight.
AdmissionDecision solve_greedy(const AdmissionInstance& inst);

inline constexpr std::size_t kBruteForceMaxRequests = 20;

// Best objective over all 2^J subsets. Throws std::invalid_argument when
// J > kBruteForceMaxRequests.
std::int64_t brute_force_oracle(const AdmissionInstance& inst);

}  // namespace nsb::admission
