#include "nsb/metrics/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nsb::metrics {

std::optional<std::vector<CdfPoint>> compute_cdf(std::vector<double> samples) {
  if (samples.empty()) return std::nullopt;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  std::vector<CdfPoint> out;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (k + 1 < samples.size() && samples[k + 1] == samples[k]) continue;
    out.push_back({samples[k], static_cast<double>(k + 1) / n});
  }
  out.back().cum_prob = 1.0;
  return out;
}

std::optional<double> percentile(std::vector<double> samples, double p) {
  if (samples.empty()) return std::nullopt;
  if (!(p >= 0.0 && p <= 100.0)) throw std::invalid_argument("percentile outside [0, 100]");
  std::sort(samples.begin(), samples.end());
  const double rank = p / 100.0 * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  return samples[lo] + (samples[hi] - samples[lo]) * frac;
}

ThroughputSeries throughput_series(std::vector<std::int64_t> per_second, double duration_s) {
  if (!(duration_s > 0.0)) throw std::invalid_argument("throughput needs a positive duration");
  ThroughputSeries s;
  const std::int64_t total = std::accumulate(per_second.begin(), per_second.end(), std::int64_t{0});
  s.per_second = std::move(per_second);
  s.average = static_cast<double>(total) / duration_s;
  return s;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 2) throw std::invalid_argument("slope needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope undefined for constant x");
  return sxy / sxx;
}

std::optional<std::size_t> first_cumulative_exceed(std::span<const std::int64_t> hits,
                                                   std::span<const std::int64_t> totals,
                                                   double threshold) {
  std::int64_t h = 0, t = 0;
  for (std::size_t k = 0; k < std::min(hits.size(), totals.size()); ++k) {
    h += hits[k];
    t += totals[k];
    if (t > 0 && static_cast<double>(h) / static_cast<double>(t) > threshold) return k;
  }
  return std::nullopt;
}

double skewness(std::span<const double> samples) {
  if (samples.size() < 2) return 0.0;
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double m2 = 0.0, m3 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 == 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

}  // namespace nsb::metrics
