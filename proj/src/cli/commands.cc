#include "nsb/cli/commands.h"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsb/admission/instance_io.h"
#include "nsb/admission/solver.h"
#include "nsb/common/codec.h"
#include "nsb/ledger/chain_dump.h"
#include "nsb/workload/scenario.h"

namespace nsb::cli {
namespace fs = std::filesystem;
using workload::ConfigDiagnostic;
using workload::ConfigError;
using workload::ScenarioConfig;

namespace {

struct Job {
  std::string point;  // sweep label, "base" without a sweep
  std::size_t rep = 0;
  ScenarioConfig cfg;
  fs::path dir;
};

struct JobResult {
  bool ok = false;
  std::string error;
  metrics::MetricsReport report;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing " + path.string());
}

void write_artifacts(const Job& job, const workload::ScenarioResult& result) {
  metrics::export_report(result.report, job.dir);
  for (const auto& ch : result.channels) {
    std::ostringstream dump;
    ledger::write_chain_dump(dump, ch.chain);
    write_text(job.dir / ("chain_" + ch.name + ".ndjson"), dump.str());
    if (job.cfg.trace) {
      std::string lines;
      for (const auto& l : ch.trace) lines += l + '\n';
      write_text(job.dir / ("trace_" + ch.name + ".log"), lines);
    }
  }
}

JobResult execute(const Job& job) {
  JobResult r;
  try {
    auto result = workload::run_scenario(job.cfg);
    write_artifacts(job, result);
    r.report = std::move(result.report);
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

double fraction(std::int64_t part, std::int64_t whole) {
  return whole > 0 ? static_cast<double>(part) / static_cast<double>(whole) : 0.0;
}

void write_sweep_summary(const fs::path& dir, const std::vector<Job>& jobs,
                         const std::vector<JobResult>& results) {
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::ostringstream csv;
  csv << "point,rep,seed,status,submitted,committed,rw_conflict,sr_collision,in_flight,"
         "rw_fraction,collision_fraction,throughput_per_s,p50_ms,growth_bytes_per_s\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    const auto& res = results[i];
    nlohmann::ordered_json j;
    j["point"] = job.point;
    j["rep"] = job.rep;
    j["seed"] = job.cfg.seed;
    j["dir"] = fs::relative(job.dir, dir).generic_string();
    j["status"] = res.ok ? "ok" : "error";
    csv << job.point << ',' << job.rep << ',' << job.cfg.seed << ',' << (res.ok ? "ok" : "error");
    if (res.ok) {
      const auto& t = res.report.totals;
      const double p50 = res.report.latency ? res.report.latency->p50_ms : 0.0;
      const double growth = res.report.growth_fit ? res.report.growth_fit->bytes_per_second : 0.0;
      j["submitted"] = t.submitted;
      j["committed"] = t.committed;
      j["rw_conflict"] = t.rw_conflict;
      j["sr_collision"] = t.sr_collision;
      j["in_flight"] = res.report.in_flight;
      j["rw_fraction"] = fraction(t.rw_conflict, t.submitted);
      j["collision_fraction"] = fraction(t.sr_collision, t.submitted);
      j["throughput_per_s"] = res.report.throughput.average;
      j["p50_ms"] = p50;
      j["growth_bytes_per_s"] = growth;
      csv << ',' << t.submitted << ',' << t.committed << ',' << t.rw_conflict << ','
          << t.sr_collision << ',' << res.report.in_flight << ','
          << metrics::format_number(fraction(t.rw_conflict, t.submitted)) << ','
          << metrics::format_number(fraction(t.sr_collision, t.submitted)) << ','
          << metrics::format_number(res.report.throughput.average) << ','
          << metrics::format_number(p50) << ',' << metrics::format_number(growth);
    } else {
      j["error"] = res.error;
      csv << ",,,,,,,,,,";
    }
    csv << '\n';
    runs.push_back(std::move(j));
  }
  write_text(dir / "sweep_summary.json", nlohmann::ordered_json{{"runs", runs}}.dump(2) + "\n");
  write_text(dir / "sweep_summary.csv", csv.str());
}

void print_diagnostics(std::ostream& err, const ConfigError& e) {
  err << "config error:\n" << e.what() << '\n';
}

bool directory_usable(const fs::path& dir, std::string& why) {
  std::error_code ec;
  if (!fs::exists(dir, ec)) return true;
  if (!fs::is_directory(dir, ec)) {
    why = dir.string() + " exists and is not a directory";
    return false;
  }
  if (!fs::is_empty(dir, ec)) {
    why = "output directory " + dir.string() + " is not empty";
    return false;
  }
  return true;
}

const char* process_env(const char* name) { return std::getenv(name); }

}  // namespace

std::optional<SweepAxis> parse_sweep(std::string_view text, std::string& error) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    error = "sweep must look like KEY=v1,v2,...";
    return std::nullopt;
  }
  SweepAxis axis;
  axis.key = std::string(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view v = rest.substr(0, comma);
    if (v.empty()) {
      error = "sweep values must be non-empty";
      return std::nullopt;
    }
    axis.values.emplace_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return axis;
}

std::uint64_t child_seed(std::uint64_t base, std::string_view point, std::size_t rep) {
  return derive_seed(base, std::string(point) + "#" + std::to_string(rep));
}

ScenarioConfig resolve_config(const std::optional<fs::path>& config_path,
                              const std::vector<std::string>& overrides,
                              const std::optional<std::string>& consensus,
                              const workload::EnvLookup& env) {
  ScenarioConfig cfg = config_path ? workload::load_config_file(*config_path) : ScenarioConfig{};
  if (auto d = workload::apply_env(cfg, env); !d.empty()) throw ConfigError("environment", d);
  if (auto d = workload::apply_overrides(cfg, overrides); !d.empty()) throw ConfigError("--set", d);
  if (consensus) {
    if (auto e = workload::set_field(cfg, "consensus", *consensus); !e.empty()) {
      throw ConfigError("--consensus", {{0, e}});
    }
  }
  return cfg;
}

int cmd_run(const RunManifest& m, const workload::EnvLookup& env, std::ostream& out,
            std::ostream& err) {
  ScenarioConfig base;
  try {
    base = resolve_config(m.config_path, m.overrides, m.consensus, env);
  } catch (const ConfigError& e) {
    print_diagnostics(err, e);
    return kExitConfigError;
  }
  if (m.trace) base.trace = true;
  if (m.seeds == 0) {
    err << "config error: --seeds must be at least 1\n";
    return kExitConfigError;
  }

  // Every point is checked before anything is written.
  std::vector<std::pair<std::string, ScenarioConfig>> points;
  if (m.sweep) {
    for (const auto& v : m.sweep->values) {
      ScenarioConfig cfg = base;
      const std::string label = m.sweep->key + "=" + v;
      if (auto e = workload::set_field(cfg, m.sweep->key, v); !e.empty()) {
        err << "config error: --sweep " << label << ": " << e << '\n';
        return kExitConfigError;
      }
      points.emplace_back(label, cfg);
    }
  } else {
    points.emplace_back("base", base);
  }
  for (const auto& [label, cfg] : points) {
    if (auto errs = workload::validate(cfg); !errs.empty()) {
      err << "config error (" << label << "):\n";
      for (const auto& e : errs) err << "  " << e << '\n';
      return kExitConfigError;
    }
  }
  std::string why;
  if (!directory_usable(m.out_dir, why)) {
    err << "config error: " << why << '\n';
    return kExitConfigError;
  }

  const bool single = !m.sweep && m.seeds == 1;
  std::vector<Job> jobs;
  for (const auto& [label, cfg] : points) {
    for (std::size_t rep = 0; rep < m.seeds; ++rep) {
      Job job{label, rep, cfg, m.out_dir};
      if (!single) {
        job.cfg.seed = child_seed(base.seed, label, rep);
        job.dir = m.out_dir / label / ("seed-" + std::to_string(rep));
      }
      jobs.push_back(std::move(job));
    }
  }

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = execute(jobs[i]);
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(m.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool failed = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = results[i];
    if (r.ok) {
      const auto& t = r.report.totals;
      out << jobs[i].dir.string() << ": submitted=" << t.submitted << " committed=" << t.committed
          << " rw_conflict=" << t.rw_conflict << " sr_collision=" << t.sr_collision
          << " in_flight=" << r.report.in_flight << '\n';
    } else {
      failed = true;
      err << jobs[i].dir.string() << ": runtime error: " << r.error << '\n';
    }
  }
  if (!single) {
    try {
      write_sweep_summary(m.out_dir, jobs, results);
    } catch (const std::exception& e) {
      err << "runtime error: " << e.what() << '\n';
      return kExitRuntimeError;
    }
  }
  return failed ? kExitRuntimeError : kExitOk;
}

int cmd_verify(const fs::path& dump, std::ostream& out, std::ostream& err) {
  std::ifstream in(dump, std::ios::binary);
  if (!in) {
    err << "runtime error: cannot open " << dump.string() << '\n';
    return kExitRuntimeError;
  }
  const ledger::DumpCheck check = ledger::check_chain_dump(in);
  if (check.status == ledger::DumpStatus::kEmpty) {
    err << "runtime error: " << dump.string() << " holds no blocks\n";
    return kExitRuntimeError;
  }
  if (!check.ok()) {
    err << "verification failed";
    if (check.failing_height) err << " at height " << *check.failing_height;
    err << ": " << check.message << '\n';
    return kExitVerifyFailure;
  }
  out << "ok: chain verified, conservation holds; totals";
  for (auto v : check.final_totals) out << ' ' << v;
  out << '\n';
  return kExitOk;
}

int cmd_solve(const fs::path& path, std::string_view method, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "config error: cannot open " << path.string() << '\n';
    return kExitConfigError;
  }
  admission::AdmissionInstance inst;
  try {
    inst = admission::read_instance(in);
  } catch (const admission::InstanceFormatError& e) {
    err << "config error: " << path.string() << ":" << e.what() << '\n';
    return kExitConfigError;
  }
  auto print = [&](std::string_view name, const admission::AdmissionDecision& d) {
    out << name << " objective " << d.objective << " y";
    for (auto y : d.y) out << ' ' << static_cast<int>(y);
    out << '\n';
  };
  try {
    const bool all = method == "all";
    if (all || method == "exact") print("exact", admission::solve_exact(inst));
    if (all || method == "greedy") print("greedy", admission::solve_greedy(inst));
    if (method == "brute" || (all && inst.num_requests() <= admission::kBruteForceMaxRequests)) {
      out << "brute objective " << admission::brute_force_oracle(inst) << '\n';
    }
    if (!all && method != "exact" && method != "greedy" && method != "brute") {
      err << "config error: unknown method '" << method << "'\n";
      return kExitConfigError;
    }
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitOk;
}

int cmd_check_config(const std::optional<fs::path>& config_path,
                     const std::vector<std::string>& overrides,
                     const std::optional<std::string>& consensus, bool list,
                     const workload::EnvLookup& env, std::ostream& out, std::ostream& err) {
  if (list) {
    for (const auto& f : workload::config_fields()) {
      out << f.name << "  " << f.description << '\n';
    }
    return kExitOk;
  }
  ScenarioConfig cfg;
  try {
    cfg = resolve_config(config_path, overrides, consensus, env);
  } catch (const ConfigError& e) {
    print_diagnostics(err, e);
    return kExitConfigError;
  }
  if (auto errs = workload::validate(cfg); !errs.empty()) {
    err << "config error:\n";
    for (const auto& e : errs) err << "  " << e << '\n';
    return kExitConfigError;
  }
  out << workload::config_to_text(cfg);
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"nsbchain: deterministic network-slicing brokerage ledger simulator"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::optional<std::string> config;
  std::vector<std::string> sets;
  std::optional<std::string> consensus;
  std::string sweep;

  auto* run = app.add_subcommand("run", "run a scenario, a sweep, or several seeds");
  run->add_option("--config", config, "config file (key = value lines)");
  run->add_option("--set", sets, "KEY=VALUE override, repeatable");
  run->add_option("--sweep", sweep, "KEY=v1,v2,... sweep axis");
  run->add_option("--seeds", manifest.seeds, "repetitions per sweep point");
  run->add_option("--out", manifest.out_dir, "output directory (new or empty)");
  run->add_option("--consensus", consensus, "solo, raft or kafka");
  run->add_flag("--trace", manifest.trace, "write the ordering event trace");
  run->add_option("--jobs", manifest.jobs, "parallel workers");

  std::string dump;
  auto* verify = app.add_subcommand("verify", "verify a chain dump");
  verify->add_option("DUMP", dump, "chain dump (NDJSON)")->required();

  std::string instance;
  std::string method = "all";
  auto* solve = app.add_subcommand("solve", "solve an admission instance");
  solve->add_option("INSTANCE", instance, "instance file")->required();
  solve->add_option("--method", method, "exact, greedy, brute or all");

  bool list = false;
  auto* check = app.add_subcommand("check-config", "print the effective configuration");
  check->add_option("--config", config, "config file");
  check->add_option("--set", sets, "KEY=VALUE override, repeatable");
  check->add_option("--consensus", consensus, "solo, raft or kafka");
  check->add_flag("--list", list, "list every config key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  std::optional<fs::path> config_path;
  if (config) config_path = fs::path(*config);

  if (*run) {
    manifest.config_path = config_path;
    manifest.overrides = sets;
    manifest.consensus = consensus;
    if (!sweep.empty()) {
      std::string error;
      manifest.sweep = parse_sweep(sweep, error);
      if (!manifest.sweep) {
        err << "config error: " << error << '\n';
        return kExitConfigError;
      }
    }
    return cmd_run(manifest, process_env, out, err);
  }
  if (*verify) return cmd_verify(dump, out, err);
  if (*solve) return cmd_solve(instance, method, out, err);
  return cmd_check_config(config_path, sets, consensus, list, process_env, out, err);
}

}  // namespace nsb::cli
