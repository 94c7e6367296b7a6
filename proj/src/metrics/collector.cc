#include "nsb/metrics/collector.h"

#include <stdexcept>

#include "nsb/metrics/stats.h"

namespace nsb::metrics {

OutcomeCounters& OutcomeCounters::operator+=(const OutcomeCounters& o) {
  submitted += o.submitted;
  committed += o.committed;
  rw_conflict += o.rw_conflict;
  sr_collision += o.sr_collision;
  bad_signature += o.bad_signature;
  return *this;
}

OutcomeCounters& MetricsCollector::bucket(SimTime submit_time) {
  const SimTime rel = submit_time - transfer_start_;
  const std::size_t idx = rel <= 0 ? 0 : static_cast<std::size_t>(rel / kMicrosPerSecond);
  if (idx >= buckets_.size()) buckets_.resize(idx + 1);
  return buckets_[idx];
}

void MetricsCollector::on_submitted(SimTime submit_time) { ++bucket(submit_time).submitted; }

void MetricsCollector::on_outcome(ledger::TxValidity v, const std::string& tx_id,
                                  SimTime submit_time, SimTime at) {
  OutcomeCounters& b = bucket(submit_time);
  switch (v) {
    case ledger::TxValidity::kCommitted:
      ++b.committed;
      latencies_.push_back({tx_id, submit_time, at});
      break;
    case ledger::TxValidity::kRwConflict:
      ++b.rw_conflict;
      break;
    case ledger::TxValidity::kSrCollision:
      ++b.sr_collision;
      break;
    case ledger::TxValidity::kBadSignature:
      ++b.bad_signature;
      break;
  }
}

void MetricsCollector::on_block(SimTime t, std::uint64_t bytes) {
  ChainGrowthSample s{t, bytes, 1};
  if (!growth_.empty()) {
    s.cumulative_bytes += growth_.back().cumulative_bytes;
    s.cumulative_blocks += growth_.back().cumulative_blocks;
  }
  growth_.push_back(s);
}

OutcomeCounters MetricsCollector::totals() const {
  OutcomeCounters t;
  for (const auto& b : buckets_) t += b;
  return t;
}

GrowthFit growth_rate(std::span<const ChainGrowthSample> samples, SimTime transfer_start,
                      std::optional<SimTime> end) {
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (s.time < transfer_start || (end && s.time > *end)) continue;
    x.push_back(to_seconds(s.time));
    y.push_back(static_cast<double>(s.cumulative_bytes));
  }
  if (x.size() < 2) throw std::invalid_argument("growth rate needs two samples in the transfer phase");
  GrowthFit fit;
  fit.bytes_per_second = least_squares_slope(x, y);
  fit.transfer_start = transfer_start;
  fit.samples = x.size();
  return fit;
}

}  // namespace nsb::metrics
