#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsb/cli/commands.h"

using namespace nsb;
using namespace nsb::cli;
namespace fs = std::filesystem;

namespace {

const char* no_env(const char*) { return nullptr; }

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nsb_cli_" + name);
  fs::remove_all(p);
  return p;
}

RunManifest small_manifest(const fs::path& out) {
  RunManifest m;
  m.overrides = {"consortium_size=30", "sr_rate=30", "duration_s=2", "drain_s=2"};
  m.out_dir = out;
  return m;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Sweep, Parse) {
  std::string error;
  const auto axis = parse_sweep("consensus=solo,raft", error);
  ASSERT_TRUE(axis.has_value());
  EXPECT_EQ(axis->key, "consensus");
  EXPECT_EQ(axis->values, (std::vector<std::string>{"solo", "raft"}));
  EXPECT_FALSE(parse_sweep("consensus", error).has_value());
  EXPECT_FALSE(parse_sweep("consensus=", error).has_value());
}

TEST(Seeds, ChildSeedDependsOnPointAndRep) {
  EXPECT_EQ(child_seed(1, "a", 0), child_seed(1, "a", 0));
  EXPECT_NE(child_seed(1, "a", 0), child_seed(1, "a", 1));
  EXPECT_NE(child_seed(1, "a", 0), child_seed(1, "b", 0));
  EXPECT_NE(child_seed(1, "a", 0), child_seed(2, "a", 0));
}

TEST(ResolveConfig, Precedence) {
  const fs::path dir = fresh_dir("precedence");
  fs::create_directories(dir);
  std::ofstream(dir / "c.cfg") << "sr_rate = 10\nseed = 4\nconsensus = solo\n";
  const auto env = [](const char* n) -> const char* {
    return std::string(n) == "NSB_SR_RATE" ? "20" : nullptr;
  };
  auto cfg = resolve_config(dir / "c.cfg", {}, std::nullopt, env);
  EXPECT_EQ(cfg.sr_rate, 20.0);
  EXPECT_EQ(cfg.seed, 4u);
  cfg = resolve_config(dir / "c.cfg", {"sr_rate=30", "consensus=raft"}, std::string("kafka"), env);
  EXPECT_EQ(cfg.sr_rate, 30.0);
  EXPECT_EQ(cfg.consensus.service, ordering::ServiceKind::kKafka);
  EXPECT_THROW(resolve_config(dir / "missing.cfg", {}, std::nullopt, no_env), workload::ConfigError);
  fs::remove_all(dir);
}

TEST(Run, SingleRunWritesArtifactsAndVerifies) {
  const fs::path out = fresh_dir("single");
  std::ostringstream o, e;
  ASSERT_EQ(cmd_run(small_manifest(out), no_env, o, e), kExitOk) << e.str();
  EXPECT_TRUE(fs::exists(out / "summary.json"));
  for (const char* ch : {"ib0", "ib1", "ib2"}) {
    const fs::path dump = out / (std::string("chain_") + ch + ".ndjson");
    ASSERT_TRUE(fs::exists(dump));
    std::ostringstream vo, ve;
    EXPECT_EQ(cmd_verify(dump, vo, ve), kExitOk) << ve.str();
  }

  // Tampering with one block is caught and reported with its height.
  std::string text = slurp(out / "chain_ib0.ndjson");
  const auto line2 = text.find('\n', text.find('\n') + 1) + 1;
  const auto raw = text.find("\"raw\":\"", line2) + 40;
  text[raw] = text[raw] == 'a' ? 'b' : 'a';
  std::ofstream(out / "tampered.ndjson", std::ios::binary) << text;
  std::ostringstream vo, ve;
  EXPECT_EQ(cmd_verify(out / "tampered.ndjson", vo, ve), kExitVerifyFailure);
  EXPECT_NE(ve.str().find("height"), std::string::npos) << ve.str();

  std::ofstream(out / "empty.ndjson");
  EXPECT_EQ(cmd_verify(out / "empty.ndjson", vo, ve), kExitRuntimeError);
  EXPECT_EQ(cmd_verify(out / "missing.ndjson", vo, ve), kExitRuntimeError);
  fs::remove_all(out);
}

TEST(Run, SweepTimesSeedsProducesEveryReport) {
  const fs::path out = fresh_dir("sweep");
  RunManifest m = small_manifest(out);
  std::string error;
  m.sweep = parse_sweep("consensus=solo,raft,kafka", error);
  m.seeds = 5;
  m.jobs = 2;
  std::ostringstream o, e;
  ASSERT_EQ(cmd_run(m, no_env, o, e), kExitOk) << e.str();
  std::size_t reports = 0;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (entry.path().filename() == "summary.json") ++reports;
  }
  EXPECT_EQ(reports, 15u);
  ASSERT_TRUE(fs::exists(out / "sweep_summary.json"));
  const auto sweep = nlohmann::json::parse(std::ifstream(out / "sweep_summary.json"));
  EXPECT_FALSE(sweep.empty());
  EXPECT_TRUE(fs::exists(out / "sweep_summary.csv"));
  fs::remove_all(out);
}

TEST(Run, ConfigErrorsExitOneAndWriteNothing) {
  const fs::path out = fresh_dir("bad");
  std::ostringstream o, e;
  RunManifest m = small_manifest(out);
  m.overrides.push_back("no_such_key=1");
  EXPECT_EQ(cmd_run(m, no_env, o, e), kExitConfigError);
  EXPECT_FALSE(fs::exists(out));

  m = small_manifest(out);
  std::string error;
  m.sweep = parse_sweep("sr_rate=10,-5", error);
  EXPECT_EQ(cmd_run(m, no_env, o, e), kExitConfigError);
  EXPECT_FALSE(fs::exists(out));

  fs::create_directories(out);
  std::ofstream(out / "keep.txt") << "x";
  EXPECT_EQ(cmd_run(small_manifest(out), no_env, o, e), kExitConfigError);
  fs::remove_all(out);
}

TEST(Solve, MethodsAndErrors) {
  const fs::path dir = fresh_dir("solve");
  fs::create_directories(dir);
  std::ofstream(dir / "i.txt") << "I 1\nJ 3\nr 10\npi 6\npi 5\npi 5\ntheta 10\ntheta 8\ntheta 8\n";
  std::ostringstream o, e;
  EXPECT_EQ(cmd_solve(dir / "i.txt", "all", o, e), kExitOk) << e.str();
  EXPECT_NE(o.str().find("exact objective 16"), std::string::npos) << o.str();
  EXPECT_NE(o.str().find("brute objective 16"), std::string::npos) << o.str();
  EXPECT_EQ(cmd_solve(dir / "i.txt", "simplex", o, e), kExitConfigError);
  std::ofstream(dir / "bad.txt") << "I 1\nJ 1\nr ten\n";
  EXPECT_EQ(cmd_solve(dir / "bad.txt", "exact", o, e), kExitConfigError);
  fs::remove_all(dir);
}

TEST(Cli, ArgumentParsing) {
  std::ostringstream o, e;
  const char* none[] = {"nsbchain"};
  EXPECT_EQ(run_cli(1, none, o, e), kExitConfigError);
  const char* list[] = {"nsbchain", "check-config", "--list"};
  EXPECT_EQ(run_cli(3, list, o, e), kExitOk);
  EXPECT_NE(o.str().find("service_time_ms"), std::string::npos);
  const char* bad[] = {"nsbchain", "check-config", "--set", "sr_rate=abc"};
  EXPECT_EQ(run_cli(4, bad, o, e), kExitConfigError);
}
