#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nsb::metrics {

struct CdfPoint {
  double latency_ms = 0.0;
  double cum_prob = 0.0;
  bool operator==(const CdfPoint&) const = default;
};

// Empirical CDF: one point per distinct sample value, carrying the fraction
// of samples at or below it. The last point has probability 1. nullopt for
// an empty input.
std::optional<std::vector<CdfPoint>> compute_cdf(std::vector<double> samples);

// Percentile p in [0, 100] by linear interpolation between closest ranks:
// rank = p/100 × (n − 1). nullopt for an empty input.
std::optional<double> percentile(std::vector<double> samples, double p);

struct ThroughputSeries {
  std::vector<std::int64_t> per_second;
  double average = 0.0;
};

// Per-second committed counts and total / duration_s. Throws
// std::invalid_argument unless duration_s > 0.
ThroughputSeries throughput_series(std::vector<std::int64_t> per_second, double duration_s);

// Ordinary least squares slope of y on x. Throws std::invalid_argument with
// fewer than two points or when every x is equal.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

// First index at which Σ_{k≤t} hits / Σ_{k≤t} totals exceeds `threshold`.
std::optional<std::size_t> first_cumulative_exceed(std::span<const std::int64_t> hits,
                                                   std::span<const std::int64_t> totals,
                                                   double threshold);

// Sample skewness (third standardized moment); 0 for fewer than 2 samples or
// zero spread.
double skewness(std::span<const double> samples);

}  // namespace nsb::metrics
