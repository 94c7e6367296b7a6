#pragma once

#include <string>
#include <vector>

#include "nsb/ledger/types.h"
#include "nsb/metrics/report.h"
#include "nsb/workload/config.h"

namespace nsb::workload {

struct ChannelArtifacts {
  std::string name;
  std::vector<ledger::Block> chain;
  std::vector<std::string> trace;  // filled when cfg.trace is set
};

struct ScenarioResult {
  metrics::MetricsReport report;
  std::vector<ChannelArtifacts> channels;
};

// Runs both benchmark phases on a fresh simulator.
//
// Opening: each channel gets a genesis block with the registry and one IB
// transaction moving the equal split to its tenants. The transfer phase
// starts once every channel has committed its opening.
//
// Transfer: SR n (n = 0, 1, ...) arrives at transfer_start + n / sr_rate on
// channel n mod num_ibs, from a tenant drawn uniformly among those with
// remaining intent. The matchmaker picks the counterparty, the contract is
// simulated on the peer's committed state at arrival, and an endorsed SR
// reaches the orderer after service_time_ms plus one network latency.
// Ordered blocks reach the peer after another latency and commit in order.
// Collisions found during simulation are dropped before ordering.
//
// Throws std::invalid_argument for an invalid config and std::runtime_error
// if the opening phase cannot complete.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace nsb::workload
