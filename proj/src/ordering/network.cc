#include "nsb/ordering/network.h"

#include <cmath>

namespace nsb::ordering {

std::string NetworkModel::validate() const {
  if (!(latency_min_ms >= 0.0)) return "latency_min_ms must be >= 0";
  if (!(latency_min_ms <= latency_mode_ms && latency_mode_ms <= latency_max_ms)) {
    return "latency must satisfy min <= mode <= max";
  }
  if (!(drop_probability >= 0.0 && drop_probability <= 1.0)) {
    return "drop_probability must lie in [0, 1]";
  }
  return {};
}

double triangular_quantile(double u, double min, double mode, double max) {
  if (max <= min) return min;
  const double span = max - min;
  const double split = (mode - min) / span;
  if (u < split) return min + std::sqrt(u * span * (mode - min));
  return max - std::sqrt((1.0 - u) * span * (max - mode));
}

Network::Network(const NetworkModel& model, std::uint64_t stream_seed)
    : model_(model), rng_(stream_seed) {}

SimTime Network::sample_latency() {
  const double ms = triangular_quantile(uniform01(rng_), model_.latency_min_ms,
                                        model_.latency_mode_ms, model_.latency_max_ms);
  return from_ms_f(ms);
}

bool Network::dropped() {
  if (model_.drop_probability <= 0.0) return false;
  return uniform01(rng_) < model_.drop_probability;
}

}  // namespace nsb::ordering
