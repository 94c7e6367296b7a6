#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsb/metrics/collector.h"
#include "nsb/metrics/stats.h"

namespace nsb::metrics {

struct LatencySummary {
  std::size_t count = 0;
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p90_ms = 0.0;
  double p99_ms = 0.0;
  double max_ms = 0.0;
};

struct MetricsReport {
  nlohmann::ordered_json config;  // echo of the effective configuration
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  SimTime transfer_start = 0;

  OutcomeCounters totals;
  std::int64_t in_flight = 0;  // submitted but unresolved when the run stopped
  std::vector<OutcomeCounters> buckets;
  ThroughputSeries throughput;  // committed SRs only
  std::int64_t total_ordered = 0;

  std::vector<double> latencies_ms;
  std::optional<LatencySummary> latency;  // nullopt when nothing committed
  std::vector<CdfPoint> cdf;

  std::vector<ChainGrowthSample> growth;
  std::optional<GrowthFit> growth_fit;
  std::uint64_t blocks = 0;
  std::uint64_t chain_bytes = 0;

  std::map<std::string, std::int64_t> collision_reasons;
  std::int64_t satisfied_tenants = 0;
  bool conservation_ok = true;
  std::vector<std::string> errors;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

// Fills the derived fields (throughput, latency, CDF, growth fit) from a
// finished collector. The caller supplies config, seed and the run-level
// fields.
void summarize(MetricsReport& report, const MetricsCollector& collector, double duration_s,
               std::int64_t in_flight);

class ReportWriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat { kCsv, kJson, kBoth };

nlohmann::ordered_json to_json(const MetricsReport& report);
std::string throughput_csv(const MetricsReport& report);
std::string latency_cdf_csv(const MetricsReport& report);
std::string growth_csv(const MetricsReport& report);

// Writes throughput.csv, latency_cdf.csv and growth.csv (CSV) and/or
// summary.json (JSON) into `dir`, creating it if needed. Throws
// ReportWriteError when a file cannot be written.
void export_report(const MetricsReport& report, const std::filesystem::path& dir,
                   ReportFormat format = ReportFormat::kBoth);

// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace nsb::metrics
