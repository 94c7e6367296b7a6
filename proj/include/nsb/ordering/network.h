#pragma once

#include <cstdint>
#include <string>

#include "nsb/common/rng.h"
#include "nsb/common/sim_time.h"

namespace nsb::ordering {

// One-way link latency ~ Triangular(min, mode, max) in milliseconds, plus an
// independent per-message drop probability.
struct NetworkModel {
  double latency_min_ms = 1.0;
  double latency_mode_ms = 3.0;
  double latency_max_ms = 10.0;
  double drop_probability = 0.0;
  std::uint64_t seed = 0;

  // Empty when valid, otherwise a description of the first problem.
  std::string validate() const;
};

// Inverse CDF of the triangular distribution at u in [0,1).
double triangular_quantile(double u, double min, double mode, double max);

class Network {
 public:
  Network(const NetworkModel& model, std::uint64_t stream_seed);

  SimTime sample_latency();
  bool dropped();

  const NetworkModel& model() const { return model_; }
  void set_drop_probability(double p) { model_.drop_probability = p; }

 private:
  NetworkModel model_;
  Rng rng_;
};

}  // namespace nsb::ordering
