#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsb::admission {

using Matrix = std::vector<std::vector<std::int64_t>>;

// IB-REVENUE-MAX data. Rows are requests j, columns resource types i.
struct AdmissionInstance {
  Matrix demands;                      // π, J×I units
  Matrix prices;                       // θ, J×I currency
  std::vector<std::int64_t> capacity;  // r, I units
  std::vector<std::int64_t> revenues;  // μ_j = Σ_i θ_i^(j)

  std::size_t num_requests() const { return demands.size(); }
  std::size_t num_types() const { return capacity.size(); }

  // Empty string when shapes agree, entries are non-negative and μ matches θ.
  std::string validate() const;
};

// Builds an instance and derives μ from θ. Throws std::invalid_argument if
// the result does not validate.
AdmissionInstance make_instance(Matrix demands, Matrix prices, std::vector<std::int64_t> capacity);

std::vector<std::int64_t> revenues_from_prices(const Matrix& prices);

struct AdmissionDecision {
  // x[j][i] = y[j] for every i: a request gets all of its types or none.
  std::vector<std::vector<std::uint8_t>> x;
  std::vector<std::uint8_t> y;
  std::int64_t objective = 0;
};

// Expands y into a full decision (x and objective) for `inst`.
AdmissionDecision decision_from_y(const AdmissionInstance& inst, std::vector<std::uint8_t> y);

// Capacity respected, x consistent with y, objective equals Σ μ_j y_j.
bool is_feasible(const AdmissionInstance& inst, const AdmissionDecision& d);

}  // namespace nsb::admission
