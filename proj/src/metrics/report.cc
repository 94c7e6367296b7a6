#include "nsb/metrics/report.h"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace nsb::metrics {
namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportWriteError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw ReportWriteError("failed writing " + path.string());
}

nlohmann::ordered_json counters_json(const OutcomeCounters& c) {
  return {{"submitted", c.submitted},       {"committed", c.committed},
          {"rw_conflict", c.rw_conflict},   {"sr_collision", c.sr_collision},
          {"bad_signature", c.bad_signature}};
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void summarize(MetricsReport& report, const MetricsCollector& collector, double duration_s,
               std::int64_t in_flight) {
  report.duration_s = duration_s;
  report.transfer_start = collector.transfer_start();
  report.buckets = collector.buckets();
  report.totals = collector.totals();
  report.in_flight = in_flight;
  report.total_ordered = collector.total_ordered();

  std::vector<std::int64_t> committed;
  for (const auto& b : report.buckets) committed.push_back(b.committed);
  report.throughput = throughput_series(std::move(committed), duration_s);

  report.latencies_ms.clear();
  for (const auto& s : collector.latencies()) report.latencies_ms.push_back(s.latency_ms());
  report.cdf = compute_cdf(report.latencies_ms).value_or(std::vector<CdfPoint>{});
  report.latency.reset();
  if (!report.latencies_ms.empty()) {
    LatencySummary l;
    const auto& v = report.latencies_ms;
    l.count = v.size();
    l.mean_ms = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    l.p50_ms = *percentile(v, 50);
    l.p90_ms = *percentile(v, 90);
    l.p99_ms = *percentile(v, 99);
    l.max_ms = *percentile(v, 100);
    report.latency = l;
  }

  report.growth = collector.growth();
  report.blocks = report.growth.empty() ? 0 : report.growth.back().cumulative_blocks;
  report.chain_bytes = report.growth.empty() ? 0 : report.growth.back().cumulative_bytes;
  report.growth_fit.reset();
  const SimTime end = report.transfer_start + static_cast<SimTime>(duration_s * kMicrosPerSecond);
  try {
    report.growth_fit = growth_rate(report.growth, report.transfer_start, end);
  } catch (const std::invalid_argument&) {
    // Too few blocks in the transfer window; reported as null.
  }
}

nlohmann::ordered_json to_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["config"] = r.config;
  j["duration_s"] = r.duration_s;
  j["transfer_start_ms"] = to_ms(r.transfer_start);
  j["outcomes"] = counters_json(r.totals);
  j["in_flight"] = r.in_flight;
  j["total_ordered"] = r.total_ordered;
  j["throughput_committed_per_s"] = r.throughput.average;
  j["throughput_ordered_per_s"] =
      r.duration_s > 0 ? static_cast<double>(r.total_ordered) / r.duration_s : 0.0;
  if (r.latency) {
    j["latency_ms"] = {{"count", r.latency->count}, {"mean", r.latency->mean_ms},
                       {"p50", r.latency->p50_ms},  {"p90", r.latency->p90_ms},
                       {"p99", r.latency->p99_ms},  {"max", r.latency->max_ms}};
  } else {
    j["latency_ms"] = nullptr;
  }
  j["chain"] = {{"blocks", r.blocks}, {"bytes", r.chain_bytes}};
  j["growth_bytes_per_s"] =
      r.growth_fit ? nlohmann::ordered_json(r.growth_fit->bytes_per_second) : nlohmann::ordered_json();
  j["collision_reasons"] = r.collision_reasons;
  j["satisfied_tenants"] = r.satisfied_tenants;
  j["conservation_ok"] = r.conservation_ok;
  auto buckets = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < r.buckets.size(); ++t) {
    auto b = counters_json(r.buckets[t]);
    b["t_s"] = t;
    buckets.push_back(std::move(b));
  }
  j["per_second"] = std::move(buckets);
  auto cdf = nlohmann::ordered_json::array();
  for (const auto& p : r.cdf) cdf.push_back({p.latency_ms, p.cum_prob});
  j["latency_cdf"] = std::move(cdf);
  auto growth = nlohmann::ordered_json::array();
  for (const auto& g : r.growth) {
    growth.push_back({to_ms(g.time), g.cumulative_bytes, g.cumulative_blocks});
  }
  j["growth"] = std::move(growth);
  j["errors"] = r.errors;
  j["extra"] = r.extra;
  return j;
}

std::string throughput_csv(const MetricsReport& r) {
  std::ostringstream out;
  out << "t_s,committed,rw_conflict,sr_collision\n";
  for (std::size_t t = 0; t < r.buckets.size(); ++t) {
    const auto& b = r.buckets[t];
    out << t << ',' << b.committed << ',' << b.rw_conflict << ',' << b.sr_collision << '\n';
  }
  return out.str();
}

std::string latency_cdf_csv(const MetricsReport& r) {
  std::ostringstream out;
  out << "latency_ms,cum_prob\n";
  for (const auto& p : r.cdf) {
    out << format_number(p.latency_ms) << ',' << format_number(p.cum_prob) << '\n';
  }
  return out.str();
}

std::string growth_csv(const MetricsReport& r) {
  std::ostringstream out;
  out << "t_ms,bytes,blocks\n";
  for (const auto& g : r.growth) {
    out << format_number(to_ms(g.time)) << ',' << g.cumulative_bytes << ','
        << g.cumulative_blocks << '\n';
  }
  return out.str();
}

void export_report(const MetricsReport& report, const std::filesystem::path& dir,
                   ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ReportWriteError("cannot create " + dir.string() + ": " + ec.message());
  if (format != ReportFormat::kJson) {
    write_file(dir / "throughput.csv", throughput_csv(report));
    write_file(dir / "latency_cdf.csv", latency_cdf_csv(report));
    write_file(dir / "growth.csv", growth_csv(report));
  }
  if (format != ReportFormat::kCsv) {
    write_file(dir / "summary.json", to_json(report).dump(2) + "\n");
  }
}

}  // namespace nsb::metrics
