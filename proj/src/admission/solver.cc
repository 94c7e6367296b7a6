#include "nsb/admission/solver.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nsb::admission {
namespace {

bool fits_alone(const AdmissionInstance& inst, std::size_t j) {
  for (std::size_t i = 0; i < inst.num_types(); ++i) {
    if (inst.demands[j][i] > inst.capacity[i]) return false;
  }
  return true;
}

double density(const AdmissionInstance& inst, std::size_t j) {
  double weight = 0.0;
  for (std::size_t i = 0; i < inst.num_types(); ++i) {
    const std::int64_t d = inst.demands[j][i];
    if (d == 0) continue;
    if (inst.capacity[i] == 0) return 0.0;
    weight += static_cast<double>(d) / static_cast<double>(inst.capacity[i]);
  }
  return static_cast<double>(inst.revenues[j]) / (weight + kGreedyEpsilon);
}

// Request indices by decreasing density; ties keep the lower index first.
std::vector<std::size_t> density_order(const AdmissionInstance& inst) {
  std::vector<std::size_t> order(inst.num_requests());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dens(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) dens[j] = density(inst, j);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dens[a] > dens[b]; });
  return order;
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const AdmissionInstance& inst) : inst_(inst) {
    for (std::size_t j : density_order(inst)) {
      // Requests that cannot fit on their own never appear in a solution, and
      // worthless ones never improve it.
      if (fits_alone(inst, j) && inst.revenues[j] > 0) items_.push_back(j);
    }
    // Per type, positions into items_ sorted by μ/π_i (zero demand first).
    const std::size_t I = inst.num_types();
    by_type_.resize(I);
    for (std::size_t i = 0; i < I; ++i) {
      auto& ord = by_type_[i];
      ord.resize(items_.size());
      std::iota(ord.begin(), ord.end(), 0);
      std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        const std::int64_t da = inst.demands[items_[a]][i];
        const std::int64_t db = inst.demands[items_[b]][i];
        // μ_a/d_a > μ_b/d_b, with d = 0 treated as infinite ratio.
        if (da == 0 || db == 0) return da == 0 && db != 0;
        return static_cast<__int128>(inst.revenues[items_[a]]) * db >
               static_cast<__int128>(inst.revenues[items_[b]]) * da;
      });
    }
    residual_ = inst.capacity;
    taken_.assign(items_.size(), 0);
    best_taken_ = taken_;
  }

  AdmissionDecision run() {
    // Seed the incumbent with the greedy pass over items_ (density order).
    std::vector<std::int64_t> cap = inst_.capacity;
    std::int64_t greedy_value = 0;
    std::vector<std::uint8_t> greedy_taken(items_.size(), 0);
    for (std::size_t k = 0; k < items_.size(); ++k) {
      if (fits(items_[k], cap)) {
        take(items_[k], cap, -1);
        greedy_taken[k] = 1;
        greedy_value += inst_.revenues[items_[k]];
      }
    }
    best_ = greedy_value;
    best_taken_ = greedy_taken;
    search(0, 0);

    std::vector<std::uint8_t> y(inst_.num_requests(), 0);
    for (std::size_t k = 0; k < items_.size(); ++k) {
      if (best_taken_[k]) y[items_[k]] = 1;
    }
    return decision_from_y(inst_, std::move(y));
  }

 private:
  bool fits(std::size_t j, const std::vector<std::int64_t>& cap) const {
    for (std::size_t i = 0; i < cap.size(); ++i) {
      if (inst_.demands[j][i] > cap[i]) return false;
    }
    return true;
  }

  void take(std::size_t j, std::vector<std::int64_t>& cap, int sign) const {
    for (std::size_t i = 0; i < cap.size(); ++i) cap[i] += sign * inst_.demands[j][i];
  }

  // Upper bound on the value obtainable from items_[depth..] given residual_.
  double bound(std::size_t depth) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < by_type_.size(); ++i) {
      double value = 0.0;
      double room = static_cast<double>(residual_[i]);
      for (std::size_t pos : by_type_[i]) {
        if (pos < depth) continue;
        const std::size_t j = items_[pos];
        const double d = static_cast<double>(inst_.demands[j][i]);
        const double v = static_cast<double>(inst_.revenues[j]);
        if (d <= room) {
          room -= d;
          value += v;
        } else {
          value += v * room / d;
          break;
        }
      }
      best = std::min(best, value);
    }
    return best;
  }

  void search(std::size_t depth, std::int64_t value) {
    if (value > best_) {
      best_ = value;
      best_taken_ = taken_;
    }
    if (depth == items_.size()) return;
    // Objective values are integers, so only a bound reaching best_ + 1 can
    // lead anywhere.
    if (static_cast<double>(value) + bound(depth) < static_cast<double>(best_) + 1.0 - 1e-6) {
      return;
    }
    const std::size_t j = items_[depth];
    if (fits(j, residual_)) {
      take(j, residual_, -1);
      taken_[depth] = 1;
      search(depth + 1, value + inst_.revenues[j]);
      taken_[depth] = 0;
      take(j, residual_, +1);
    }
    search(depth + 1, value);
  }

  const AdmissionInstance& inst_;
  std::vector<std::size_t> items_;
  std::vector<std::vector<std::size_t>> by_type_;
  std::vector<std::int64_t> residual_;
  std::vector<std::uint8_t> taken_;
  std::vector<std::uint8_t> best_taken_;
  std::int64_t best_ = 0;
};

void require_valid(const AdmissionInstance& inst) {
  if (auto err = inst.validate(); !err.empty()) throw std::invalid_argument(err);
}

}  // namespace

AdmissionDecision solve_exact(const AdmissionInstance& inst) {
  require_valid(inst);
  return BranchAndBound(inst).run();
}

AdmissionDecision solve_greedy(const AdmissionInstance& inst) {
  require_valid(inst);
  std::vector<std::int64_t> cap = inst.capacity;
  std::vector<std::uint8_t> y(inst.num_requests(), 0);
  for (std::size_t j : density_order(inst)) {
    bool ok = true;
    for (std::size_t i = 0; i < cap.size() && ok; ++i) ok = inst.demands[j][i] <= cap[i];
    if (!ok) continue;
    for (std::size_t i = 0; i < cap.size(); ++i) cap[i] -= inst.demands[j][i];
    y[j] = 1;
  }
  return decision_from_y(inst, std::move(y));
}

std::int64_t brute_force_oracle(const AdmissionInstance& inst) {
  require_valid(inst);
  const std::size_t J = inst.num_requests();
  if (J > kBruteForceMaxRequests) {
    throw std::invalid_argument("brute force refuses more than 20 requests");
  }
  const std::size_t I = inst.num_types();
  std::int64_t best = 0;
  std::vector<std::int64_t> used(I);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << J); ++mask) {
    std::fill(used.begin(), used.end(), 0);
    std::int64_t value = 0;
    bool ok = true;
    for (std::size_t j = 0; j < J && ok; ++j) {
      if (!(mask >> j & 1)) continue;
      value += inst.revenues[j];
      for (std::size_t i = 0; i < I; ++i) {
        used[i] += inst.demands[j][i];
        if (used[i] > inst.capacity[i]) ok = false;
      }
    }
    if (ok) best = std::max(best, value);
  }
  return best;
}

}  // namespace nsb::admission
