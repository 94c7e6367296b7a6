#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nsb/workload/config.h"

namespace nsb::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitRuntimeError = 2,
  kExitVerifyFailure = 3,
};

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

// Parses "KEY=v1,v2,...". nullopt (with `error` set) on malformed input.
std::optional<SweepAxis> parse_sweep(std::string_view text, std::string& error);

struct RunManifest {
  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> overrides;  // KEY=VALUE, applied in order
  std::optional<std::string> consensus;
  std::optional<SweepAxis> sweep;
  std::size_t seeds = 1;
  std::filesystem::path out_dir = "nsb-out";
  bool trace = false;
  std::size_t jobs = 1;
};

// Seed of repetition `rep` at sweep point `point` (e.g. "consensus=raft"):
// the first 8 bytes of SHA-256(base ‖ point ‖ rep). Depends only on the
// point's own label, so results do not change with sweep order.
std::uint64_t child_seed(std::uint64_t base, std::string_view point, std::size_t rep);

// Defaults < config file < NSB_* environment < --set < --consensus.
// Throws workload::ConfigError carrying every diagnostic.
workload::ScenarioConfig resolve_config(const std::optional<std::filesystem::path>& config_path,
                                        const std::vector<std::string>& overrides,
                                        const std::optional<std::string>& consensus,
                                        const workload::EnvLookup& env);

int cmd_run(const RunManifest& manifest, const workload::EnvLookup& env, std::ostream& out,
            std::ostream& err);
int cmd_verify(const std::filesystem::path& dump, std::ostream& out, std::ostream& err);
int cmd_solve(const std::filesystem::path& instance, std::string_view method, std::ostream& out,
              std::ostream& err);
int cmd_check_config(const std::optional<std::filesystem::path>& config_path,
                     const std::vector<std::string>& overrides,
                     const std::optional<std::string>& consensus, bool list,
                     const workload::EnvLookup& env, std::ostream& out, std::ostream& err);

// Full command line (argv[0] included). Used by the nsbchain executable.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nsb::cli
