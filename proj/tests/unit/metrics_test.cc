#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "nsb/metrics/collector.h"
#include "nsb/metrics/report.h"
#include "nsb/metrics/stats.h"

using namespace nsb;
using namespace nsb::metrics;

TEST(Stats, PercentileInterpolates) {
  EXPECT_EQ(percentile({1, 2, 3, 4}, 50), 2.5);
  EXPECT_EQ(percentile({4, 1, 3, 2}, 0), 1.0);
  EXPECT_EQ(percentile({4, 1, 3, 2}, 100), 4.0);
  EXPECT_EQ(percentile({7}, 90), 7.0);
  EXPECT_FALSE(percentile({}, 50).has_value());
}

TEST(Stats, CdfOnePointPerDistinctValue) {
  const auto cdf = compute_cdf({3, 1, 3, 2});
  ASSERT_TRUE(cdf.has_value());
  ASSERT_EQ(cdf->size(), 3u);
  EXPECT_EQ((*cdf)[0], (CdfPoint{1, 0.25}));
  EXPECT_EQ((*cdf)[1], (CdfPoint{2, 0.5}));
  EXPECT_EQ((*cdf)[2], (CdfPoint{3, 1.0}));
  EXPECT_FALSE(compute_cdf({}).has_value());
}

TEST(Stats, SlopeAndThroughput) {
  const std::vector<double> x{0, 1, 2, 3};
  const std::vector<double> y{1, 3, 5, 7};
  EXPECT_DOUBLE_EQ(least_squares_slope(x, y), 2.0);
  const std::vector<double> flat{1, 1};
  EXPECT_THROW(least_squares_slope(flat, flat), std::invalid_argument);
  const auto t = throughput_series({10, 20, 30}, 3);
  EXPECT_DOUBLE_EQ(t.average, 20.0);
  EXPECT_THROW(throughput_series({1}, 0), std::invalid_argument);
}

TEST(Stats, FirstCumulativeExceed) {
  const std::vector<std::int64_t> hits{0, 1, 5, 0};
  const std::vector<std::int64_t> tot{10, 10, 10, 10};
  EXPECT_EQ(first_cumulative_exceed(hits, tot, 0.04), 1u);
  EXPECT_EQ(first_cumulative_exceed(hits, tot, 0.1), 2u);
  EXPECT_FALSE(first_cumulative_exceed(hits, tot, 0.5).has_value());
}

TEST(Stats, SkewnessSign) {
  const std::vector<double> right{0, 0, 0, 1, 10};
  EXPECT_GT(skewness(right), 0);
  const std::vector<double> sym{1, 2, 3};
  EXPECT_NEAR(skewness(sym), 0, 1e-12);
}

TEST(Collector, BucketsBySubmitSecond) {
  MetricsCollector c(from_ms(1000));
  c.on_submitted(from_ms(1000));
  c.on_submitted(from_ms(2500));
  c.on_outcome(ledger::TxValidity::kCommitted, "a", from_ms(1000), from_ms(1800));
  c.on_outcome(ledger::TxValidity::kRwConflict, "b", from_ms(2500), from_ms(3500));
  ASSERT_EQ(c.buckets().size(), 2u);
  EXPECT_EQ(c.buckets()[0].committed, 1);
  EXPECT_EQ(c.buckets()[1].rw_conflict, 1);
  EXPECT_EQ(c.totals().resolved(), 2);
  ASSERT_EQ(c.latencies().size(), 1u);
  EXPECT_DOUBLE_EQ(c.latencies()[0].latency_ms(), 800.0);
}

TEST(Collector, GrowthRateFromBlocks) {
  std::vector<ChainGrowthSample> s;
  for (int i = 0; i <= 10; ++i) {
    s.push_back({from_ms(100 * i), static_cast<std::uint64_t>(1000 * i), static_cast<std::uint64_t>(i)});
  }
  const GrowthFit fit = growth_rate(s, from_ms(200));
  EXPECT_NEAR(fit.bytes_per_second, 10000.0, 1e-6);
  EXPECT_EQ(fit.samples, 9u);
  EXPECT_THROW(growth_rate(s, from_ms(1000)), std::invalid_argument);
}

TEST(Report, SummarizeAndExport) {
  MetricsCollector c;
  for (int i = 0; i < 4; ++i) {
    c.on_submitted(from_ms(10 * i));
    c.on_outcome(ledger::TxValidity::kCommitted, "t" + std::to_string(i), from_ms(10 * i),
                 from_ms(10 * i + 100 * (i + 1)));
    c.on_block(from_ms(500 * i), 100);
  }
  MetricsReport r;
  summarize(r, c, 1.0, 0);
  ASSERT_TRUE(r.latency.has_value());
  EXPECT_DOUBLE_EQ(r.latency->p50_ms, 250.0);
  EXPECT_EQ(r.cdf.size(), 4u);

  const auto dir = std::filesystem::temp_directory_path() / "nsb_metrics_test";
  std::filesystem::remove_all(dir);
  export_report(r, dir);
  for (const char* f : {"summary.json", "throughput.csv", "latency_cdf.csv", "growth.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const auto json = nlohmann::json::parse(std::ifstream(dir / "summary.json"));
  EXPECT_EQ(json["outcomes"]["committed"], 4);
  std::filesystem::remove_all(dir);
}

TEST(Report, FormatNumberIsShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}
