#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nsb/ordering/orderer.h"

namespace nsb::workload {

enum class ArrivalMode { kDeterministic, kPoisson };
// kDirect: first-come contract execution. kBatch: ACQUIREs are queued and
// admitted per epoch by the revenue-maximizing admission solver.
enum class AdmissionMode { kDirect, kBatch };

struct ScenarioConfig {
  std::size_t num_ibs = 3;
  std::size_t consortium_size = 1000;  // tenants per IB
  double sr_rate = 150.0;              // SRs per second, all channels together
  double duration_s = 10.0;            // transfer phase length
  double demand_low = 0.1;             // % of the opening allocation
  double demand_high = 4.0;
  double demand_alpha = 2.0;
  double demand_beta = 5.0;
  double intent_fraction_max = 30.0;   // % of the opening allocation
  double seeker_fraction = 0.5;
  std::int64_t registry_units = 1000000;  // per resource type and channel
  double service_time_ms = 600.0;      // calibrated: ~2% RW conflicts at 50 SR/s
  ArrivalMode arrival = ArrivalMode::kDeterministic;
  AdmissionMode admission = AdmissionMode::kDirect;
  double admission_epoch_ms = 1000.0;
  double drain_s = 5.0;                // time allowed after the last SR
  double retry_ms = 50.0;              // resubmission delay while no leader
  std::uint64_t seed = 1;
  bool trace = false;
  // cluster_size 0 means the service default (SOLO 1, RAFT 3, KAFKA 3).
  ordering::OrdererConfig consensus = default_consensus();

  static ordering::OrdererConfig default_consensus();
};

struct ConfigDiagnostic {
  std::size_t line = 0;  // 0 when the problem has no source line
  std::string message;
};

std::string format_diagnostic(const std::string& source, const ConfigDiagnostic& d);

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, std::vector<ConfigDiagnostic> diagnostics);
  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ConfigDiagnostic> diagnostics_;
};

struct ConfigField {
  std::string name;
  std::string description;
};

// Every configurable key in file order.
const std::vector<ConfigField>& config_fields();

// Sets one field from its text form. Returns an empty string on success or
// a description of why the key or value was rejected.
std::string set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value);

// Applies "key = value" lines ('#' starts a comment). Collects one diagnostic
// per bad line and keeps going.
std::vector<ConfigDiagnostic> apply_config_text(ScenarioConfig& cfg, std::istream& in);

// Defaults overlaid with the file. Throws ConfigError (with every line-level
// diagnostic) when the file is missing or malformed.
ScenarioConfig load_config_file(const std::filesystem::path& path);

inline constexpr std::string_view kEnvPrefix = "NSB_";

using EnvLookup = std::function<const char*(const char*)>;

// Applies NSB_<KEY> variables (key upper-cased), e.g. NSB_SR_RATE=50.
std::vector<ConfigDiagnostic> apply_env(ScenarioConfig& cfg, const EnvLookup& lookup);

// Applies "KEY=VALUE" override strings in order.
std::vector<ConfigDiagnostic> apply_overrides(ScenarioConfig& cfg,
                                              const std::vector<std::string>& overrides);

// Semantic checks across fields; empty when the config can run.
std::vector<std::string> validate(const ScenarioConfig& cfg);

// Orderer settings with the service defaults filled in and the network
// stream seeded with `net_seed`.
ordering::OrdererConfig effective_orderer(const ScenarioConfig& cfg, std::uint64_t net_seed);

// Echo of every field, in config_fields() order.
nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg);
// Same content as "key = value" lines; parses back to an equal config.
std::string config_to_text(const ScenarioConfig& cfg);

std::string_view to_string(ArrivalMode m);
std::string_view to_string(AdmissionMode m);

}  // namespace nsb::workload
