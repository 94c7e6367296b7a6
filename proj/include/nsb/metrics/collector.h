#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsb/common/sim_time.h"
#include "nsb/ledger/types.h"

namespace nsb::metrics {

struct OutcomeCounters {
  std::int64_t submitted = 0;
  std::int64_t committed = 0;
  std::int64_t rw_conflict = 0;
  std::int64_t sr_collision = 0;
  std::int64_t bad_signature = 0;

  std::int64_t resolved() const { return committed + rw_conflict + sr_collision + bad_signature; }
  OutcomeCounters& operator+=(const OutcomeCounters& o);
  bool operator==(const OutcomeCounters&) const = default;
};

struct LatencySample {
  std::string tx_id;
  SimTime submit_time = 0;
  SimTime commit_time = 0;
  double latency_ms() const { return to_ms(commit_time - submit_time); }
};

struct ChainGrowthSample {
  SimTime time = 0;
  std::uint64_t cumulative_bytes = 0;
  std::uint64_t cumulative_blocks = 0;
};

// Event sink for one scenario. Outcomes are bucketed by the second (relative
// to the transfer start) in which the SR was submitted, so every bucket
// satisfies resolved() <= submitted; SRs still in flight at the end are the
// difference.
class MetricsCollector {
 public:
  explicit MetricsCollector(SimTime transfer_start = 0) : transfer_start_(transfer_start) {}

  void on_submitted(SimTime submit_time);
  // `at` is when the outcome became known (commit time for COMMITTED).
  void on_outcome(ledger::TxValidity v, const std::string& tx_id, SimTime submit_time, SimTime at);
  // One transaction delivered inside a block, whatever its flag.
  void on_ordered(std::int64_t n = 1) { ordered_ += n; }
  // A block of `bytes` appended to any channel at time t.
  void on_block(SimTime t, std::uint64_t bytes);

  // Only valid before the first submission.
  void set_transfer_start(SimTime t) { transfer_start_ = t; }
  SimTime transfer_start() const { return transfer_start_; }
  const std::vector<OutcomeCounters>& buckets() const { return buckets_; }
  OutcomeCounters totals() const;
  std::int64_t total_ordered() const { return ordered_; }
  const std::vector<LatencySample>& latencies() const { return latencies_; }
  const std::vector<ChainGrowthSample>& growth() const { return growth_; }

 private:
  OutcomeCounters& bucket(SimTime submit_time);

  SimTime transfer_start_;
  std::vector<OutcomeCounters> buckets_;
  std::vector<LatencySample> latencies_;
  std::vector<ChainGrowthSample> growth_;
  std::int64_t ordered_ = 0;
};

struct GrowthFit {
  double bytes_per_second = 0.0;
  SimTime transfer_start = 0;
  std::size_t samples = 0;
};

// Least-squares slope of cumulative bytes against time (seconds) over samples
// with transfer_start <= time <= end. Throws std::invalid_argument with fewer
// than two samples in the window.
GrowthFit growth_rate(std::span<const ChainGrowthSample> samples, SimTime transfer_start,
                      std::optional<SimTime> end = std::nullopt);

}  // namespace nsb::metrics
