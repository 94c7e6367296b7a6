#include "nsb/workload/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nsb::workload {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::string parse_number(std::string_view text, T& out) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return "'" + std::string(text) + "' is not a valid number";
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) return "'" + std::string(text) + "' is not finite";
  }
  out = v;
  return {};
}

std::string parse_bool(std::string_view text, bool& out) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") {
    out = true;
  } else if (text == "false" || text == "0" || text == "no" || text == "off") {
    out = false;
  } else {
    return "'" + std::string(text) + "' is not a boolean";
  }
  return {};
}

struct FieldImpl {
  ConfigField info;
  std::function<std::string(ScenarioConfig&, std::string_view)> set;
  std::function<Json(const ScenarioConfig&)> get;
};

template <typename T, typename Access>
FieldImpl number_field(std::string name, std::string desc, Access access) {
  return FieldImpl{
      {std::move(name), std::move(desc)},
      [access](ScenarioConfig& c, std::string_view v) { return parse_number<T>(v, access(c)); },
      [access](const ScenarioConfig& c) {
        return Json(access(const_cast<ScenarioConfig&>(c)));
      }};
}

const std::vector<FieldImpl>& fields() {
  static const std::vector<FieldImpl> table = [] {
    std::vector<FieldImpl> t;
    auto sz = [&](const char* n, const char* d, auto acc) { t.push_back(number_field<std::size_t>(n, d, acc)); };
    auto i64 = [&](const char* n, const char* d, auto acc) { t.push_back(number_field<std::int64_t>(n, d, acc)); };
    auto dbl = [&](const char* n, const char* d, auto acc) { t.push_back(number_field<double>(n, d, acc)); };

    sz("num_ibs", "number of IBs, one channel each", [](ScenarioConfig& c) -> auto& { return c.num_ibs; });
    sz("consortium_size", "tenants per IB", [](ScenarioConfig& c) -> auto& { return c.consortium_size; });
    dbl("sr_rate", "slice requests per second across all channels", [](ScenarioConfig& c) -> auto& { return c.sr_rate; });
    dbl("duration_s", "length of the transfer phase in seconds", [](ScenarioConfig& c) -> auto& { return c.duration_s; });
    dbl("demand_low", "smallest SR component, % of the opening allocation", [](ScenarioConfig& c) -> auto& { return c.demand_low; });
    dbl("demand_high", "largest SR component, % of the opening allocation", [](ScenarioConfig& c) -> auto& { return c.demand_high; });
    dbl("demand_alpha", "Beta shape alpha of the demand law", [](ScenarioConfig& c) -> auto& { return c.demand_alpha; });
    dbl("demand_beta", "Beta shape beta of the demand law", [](ScenarioConfig& c) -> auto& { return c.demand_beta; });
    dbl("intent_fraction_max", "upper bound of the per-type intent, % of the opening allocation", [](ScenarioConfig& c) -> auto& { return c.intent_fraction_max; });
    dbl("seeker_fraction", "share of tenants that seek resources (the rest free them)", [](ScenarioConfig& c) -> auto& { return c.seeker_fraction; });
    i64("registry_units", "registry capacity per resource type and channel (micro-units)", [](ScenarioConfig& c) -> auto& { return c.registry_units; });
    dbl("service_time_ms", "contract execution time per SR", [](ScenarioConfig& c) -> auto& { return c.service_time_ms; });
    t.push_back(FieldImpl{
        {"arrival", "SR arrival process: deterministic or poisson"},
        [](ScenarioConfig& c, std::string_view v) -> std::string {
          if (v == "deterministic") c.arrival = ArrivalMode::kDeterministic;
          else if (v == "poisson") c.arrival = ArrivalMode::kPoisson;
          else return "arrival must be deterministic or poisson";
          return {};
        },
        [](const ScenarioConfig& c) { return Json(std::string(to_string(c.arrival))); }});
    t.push_back(FieldImpl{
        {"admission", "direct (first come) or batch (per-epoch revenue maximization)"},
        [](ScenarioConfig& c, std::string_view v) -> std::string {
          if (v == "direct") c.admission = AdmissionMode::kDirect;
          else if (v == "batch") c.admission = AdmissionMode::kBatch;
          else return "admission must be direct or batch";
          return {};
        },
        [](const ScenarioConfig& c) { return Json(std::string(to_string(c.admission))); }});
    dbl("admission_epoch_ms", "epoch length of batch admission", [](ScenarioConfig& c) -> auto& { return c.admission_epoch_ms; });
    dbl("drain_s", "simulated time allowed after the last SR for in-flight work", [](ScenarioConfig& c) -> auto& { return c.drain_s; });
    dbl("retry_ms", "resubmission delay while the ordering service has no leader", [](ScenarioConfig& c) -> auto& { return c.retry_ms; });
    t.push_back(number_field<std::uint64_t>("seed", "base random seed", [](ScenarioConfig& c) -> auto& { return c.seed; }));
    t.push_back(FieldImpl{
        {"trace", "record the ordering event trace"},
        [](ScenarioConfig& c, std::string_view v) { return parse_bool(v, c.trace); },
        [](const ScenarioConfig& c) { return Json(c.trace); }});
    t.push_back(FieldImpl{
        {"consensus", "ordering service: solo, raft or kafka"},
        [](ScenarioConfig& c, std::string_view v) -> std::string {
          auto kind = ordering::parse_service(v);
          if (!kind) return "consensus must be solo, raft or kafka";
          c.consensus.service = *kind;
          return {};
        },
        [](const ScenarioConfig& c) { return Json(std::string(ordering::to_string(c.consensus.service))); }});
    sz("batch_size", "maximum transactions per block", [](ScenarioConfig& c) -> auto& { return c.consensus.batch_size; });
    i64("batch_timeout_ms", "block timeout after the first pending transaction", [](ScenarioConfig& c) -> auto& { return c.consensus.batch_timeout_ms; });
    sz("cluster_size", "orderer nodes or brokers; 0 picks the service default", [](ScenarioConfig& c) -> auto& { return c.consensus.cluster_size; });
    sz("kafka_ack_quorum", "broker confirmations needed to acknowledge an append", [](ScenarioConfig& c) -> auto& { return c.consensus.kafka_ack_quorum; });
    i64("election_timeout_min_ms", "lower bound of the Raft election timeout", [](ScenarioConfig& c) -> auto& { return c.consensus.election_timeout_min_ms; });
    i64("election_timeout_max_ms", "upper bound of the Raft election timeout", [](ScenarioConfig& c) -> auto& { return c.consensus.election_timeout_max_ms; });
    i64("heartbeat_ms", "Raft heartbeat interval", [](ScenarioConfig& c) -> auto& { return c.consensus.heartbeat_ms; });
    dbl("latency_min_ms", "network latency, triangular minimum", [](ScenarioConfig& c) -> auto& { return c.consensus.net.latency_min_ms; });
    dbl("latency_mode_ms", "network latency, triangular mode", [](ScenarioConfig& c) -> auto& { return c.consensus.net.latency_mode_ms; });
    dbl("latency_max_ms", "network latency, triangular maximum", [](ScenarioConfig& c) -> auto& { return c.consensus.net.latency_max_ms; });
    dbl("drop_probability", "per-message drop probability inside the orderer cluster", [](ScenarioConfig& c) -> auto& { return c.consensus.net.drop_probability; });
    return t;
  }();
  return table;
}

const FieldImpl* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.info.name == key) return &f;
  }
  return nullptr;
}

std::vector<ConfigDiagnostic> apply_assignment(ScenarioConfig& cfg, std::string_view text,
                                               std::size_t line) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) return {{line, "expected KEY=VALUE, got '" + std::string(text) + "'"}};
  const auto key = trim(text.substr(0, eq));
  const auto value = trim(text.substr(eq + 1));
  if (key.empty()) return {{line, "missing key"}};
  if (auto err = set_field(cfg, key, value); !err.empty()) return {{line, err}};
  return {};
}

}  // namespace

ordering::OrdererConfig ScenarioConfig::default_consensus() {
  ordering::OrdererConfig c = ordering::OrdererConfig::for_service(ordering::ServiceKind::kKafka);
  c.cluster_size = 0;
  return c;
}

std::string format_diagnostic(const std::string& source, const ConfigDiagnostic& d) {
  if (d.line == 0) return source + ": " + d.message;
  return source + ":" + std::to_string(d.line) + ": " + d.message;
}

namespace {
std::string join_diagnostics(const std::string& source, const std::vector<ConfigDiagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += '\n';
    out += format_diagnostic(source, d);
  }
  return out;
}
}  // namespace

ConfigError::ConfigError(std::string source, std::vector<ConfigDiagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(source, diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> list = [] {
    std::vector<ConfigField> out;
    for (const auto& f : fields()) out.push_back(f.info);
    return out;
  }();
  return list;
}

std::string set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
  const FieldImpl* f = find_field(key);
  if (!f) return "unknown key '" + std::string(key) + "'";
  if (value.empty()) return "missing value for '" + std::string(key) + "'";
  if (auto err = f->set(cfg, value); !err.empty()) return std::string(key) + ": " + err;
  return {};
}

std::vector<ConfigDiagnostic> apply_config_text(ScenarioConfig& cfg, std::istream& in) {
  std::vector<ConfigDiagnostic> diags;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    for (auto& d : apply_assignment(cfg, text, line)) diags.push_back(std::move(d));
  }
  return diags;
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), {{0, "cannot open config file"}});
  ScenarioConfig cfg;
  auto diags = apply_config_text(cfg, in);
  if (!diags.empty()) throw ConfigError(path.string(), std::move(diags));
  return cfg;
}

std::vector<ConfigDiagnostic> apply_env(ScenarioConfig& cfg, const EnvLookup& lookup) {
  std::vector<ConfigDiagnostic> diags;
  for (const auto& f : fields()) {
    std::string var(kEnvPrefix);
    for (char ch : f.info.name) var += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    const char* value = lookup(var.c_str());
    if (!value) continue;
    if (auto err = set_field(cfg, f.info.name, trim(value)); !err.empty()) {
      diags.push_back({0, var + ": " + err});
    }
  }
  return diags;
}

std::vector<ConfigDiagnostic> apply_overrides(ScenarioConfig& cfg,
                                              const std::vector<std::string>& overrides) {
  std::vector<ConfigDiagnostic> diags;
  for (const auto& o : overrides) {
    for (auto& d : apply_assignment(cfg, o, 0)) diags.push_back(std::move(d));
  }
  return diags;
}

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> errs;
  auto need = [&](bool ok, const char* msg) {
    if (!ok) errs.emplace_back(msg);
  };
  need(cfg.num_ibs >= 1, "num_ibs must be positive");
  need(cfg.consortium_size >= 2, "consortium_size must be at least 2");
  need(cfg.sr_rate > 0, "sr_rate must be positive");
  need(cfg.duration_s > 0, "duration_s must be positive");
  need(cfg.demand_low > 0, "demand_low must be positive");
  need(cfg.demand_low < cfg.demand_high, "demand_low must be below demand_high");
  need(cfg.demand_high <= 100, "demand_high cannot exceed 100");
  need(cfg.demand_alpha > 0 && cfg.demand_beta > 0, "demand shape parameters must be positive");
  need(cfg.intent_fraction_max > 0 && cfg.intent_fraction_max <= 100,
       "intent_fraction_max must be in (0, 100]");
  need(cfg.seeker_fraction >= 0 && cfg.seeker_fraction <= 1, "seeker_fraction must be in [0, 1]");
  need(cfg.registry_units > 0, "registry_units must be positive");
  need(cfg.registry_units >= static_cast<std::int64_t>(cfg.consortium_size),
       "registry_units must cover one unit per tenant");
  need(cfg.service_time_ms >= 0, "service_time_ms cannot be negative");
  need(cfg.admission_epoch_ms > 0, "admission_epoch_ms must be positive");
  need(cfg.drain_s >= 0, "drain_s cannot be negative");
  need(cfg.retry_ms > 0, "retry_ms must be positive");
  if (auto err = effective_orderer(cfg, 0).validate(); !err.empty()) errs.push_back(err);
  return errs;
}

ordering::OrdererConfig effective_orderer(const ScenarioConfig& cfg, std::uint64_t net_seed) {
  ordering::OrdererConfig c = cfg.consensus;
  if (c.cluster_size == 0) {
    c.cluster_size = ordering::OrdererConfig::for_service(c.service).cluster_size;
  }
  c.net.seed = net_seed;
  return c;
}

Json config_to_json(const ScenarioConfig& cfg) {
  Json j = Json::object();
  for (const auto& f : fields()) j[f.info.name] = f.get(cfg);
  return j;
}

std::string config_to_text(const ScenarioConfig& cfg) {
  std::ostringstream out;
  for (const auto& f : fields()) {
    const Json v = f.get(cfg);
    out << f.info.name << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return out.str();
}

std::string_view to_string(ArrivalMode m) {
  return m == ArrivalMode::kPoisson ? "poisson" : "deterministic";
}

std::string_view to_string(AdmissionMode m) {
  return m == AdmissionMode::kBatch ? "batch" : "direct";
}

}  // namespace nsb::workload
