#include "nsb/admission/instance.h"

#include <stdexcept>

namespace nsb::admission {

std::vector<std::int64_t> revenues_from_prices(const Matrix& prices) {
  std::vector<std::int64_t> mu;
  mu.reserve(prices.size());
  for (const auto& row : prices) {
    std::int64_t sum = 0;
    for (std::int64_t p : row) sum += p;
    mu.push_back(sum);
  }
  return mu;
}

std::string AdmissionInstance::validate() const {
  const std::size_t I = capacity.size();
  if (I == 0) return "at least one resource type is required";
  if (prices.size() != demands.size()) return "demand and price row counts differ";
  if (revenues.size() != demands.size()) return "revenue vector has the wrong length";
  for (std::int64_t c : capacity) {
    if (c < 0) return "negative capacity";
  }
  for (std::size_t j = 0; j < demands.size(); ++j) {
    if (demands[j].size() != I || prices[j].size() != I) {
      return "request " + std::to_string(j) + " does not have " + std::to_string(I) + " entries";
    }
    for (std::size_t i = 0; i < I; ++i) {
      if (demands[j][i] < 0 || prices[j][i] < 0) {
        return "request " + std::to_string(j) + " has a negative entry";
      }
    }
  }
  if (revenues != revenues_from_prices(prices)) return "revenues do not match prices";
  return {};
}

AdmissionInstance make_instance(Matrix demands, Matrix prices, std::vector<std::int64_t> capacity) {
  AdmissionInstance inst;
  inst.revenues = revenues_from_prices(prices);
  inst.demands = std::move(demands);
  inst.prices = std::move(prices);
  inst.capacity = std::move(capacity);
  if (auto err = inst.validate(); !err.empty()) throw std::invalid_argument(err);
  return inst;
}

AdmissionDecision decision_from_y(const AdmissionInstance& inst, std::vector<std::uint8_t> y) {
  AdmissionDecision d;
  d.y = std::move(y);
  d.x.resize(d.y.size());
  for (std::size_t j = 0; j < d.y.size(); ++j) {
    d.x[j].assign(inst.num_types(), d.y[j]);
    if (d.y[j]) d.objective += inst.revenues[j];
  }
  return d;
}

bool is_feasible(const AdmissionInstance& inst, const AdmissionDecision& d) {
  const std::size_t J = inst.num_requests();
  const std::size_t I = inst.num_types();
  if (d.y.size() != J || d.x.size() != J) return false;
  std::vector<std::int64_t> used(I, 0);
  std::int64_t objective = 0;
  for (std::size_t j = 0; j < J; ++j) {
    if (d.y[j] > 1 || d.x[j].size() != I) return false;
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < I; ++i) {
      if (d.x[j][i] > 1) return false;
      assigned += d.x[j][i];
      if (d.x[j][i]) used[i] += inst.demands[j][i];
    }
    if (assigned != I * d.y[j]) return false;
    if (d.y[j]) objective += inst.revenues[j];
  }
  for (std::size_t i = 0; i < I; ++i) {
    if (used[i] > inst.capacity[i]) return false;
  }
  return objective == d.objective;
}

}  // namespace nsb::admission
