#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "nsb/ordering/event_loop.h"
#include "nsb/ordering/raft.h"
#include "oracles.h"

namespace nsb::oracle {

struct RaftRunResult {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t released_batches = 0;
  std::size_t released_txs = 0;
  std::size_t durable_entries = 0;
  std::size_t crashes = 0;
};

// One randomized Raft run: client traffic, message drops and crash/recover
// faults that never take down more than a minority at once. After the fault
// window everything recovers and drops stop, so the cluster can converge
// before the final log checks.
inline RaftRunResult run_raft_trial(std::uint64_t seed, SimTime fault_window = 12 * kMicrosPerSecond) {
  Rng rng = make_rng(seed, "raft-trial");
  ordering::OrdererConfig cfg = ordering::OrdererConfig::for_service(ordering::ServiceKind::kRaft);
  cfg.cluster_size = (rng() % 2 == 0) ? 3 : 5;
  cfg.net.drop_probability = 0.2 * uniform01(rng);
  cfg.net.seed = derive_seed(seed, "net");

  ordering::EventLoop loop;
  RaftSafetyChecker checker;
  RaftRunResult result;
  std::set<std::string> released;

  ordering::RaftCluster cluster(
      loop, cfg,
      [&](ordering::OrderedBatch batch) {
        ++result.released_batches;
        for (const auto& tx : batch.transactions) {
          if (!released.insert(tx->tx_id).second) {
            result.failures.push_back("tx " + tx->tx_id + " released twice");
          }
        }
      },
      [&](const ordering::TraceEvent& ev) { checker.on_trace(ev); });

  const int n = static_cast<int>(cfg.cluster_size);
  const int max_down = (n - 1) / 2;
  std::set<int> down;

  // Client traffic: ~40 tx/s, retried while no leader is known.
  std::function<void(std::string)> submit = [&](std::string id) {
    const auto status = cluster.submit(dummy_tx(id, loop.now()));
    if (status == ordering::SubmitStatus::kRetryLater && loop.now() < fault_window) {
      loop.schedule_after(from_ms(50), [&, id] { submit(id); });
    }
  };
  std::uint64_t next_tx = 0;
  for (SimTime t = 0; t < fault_window; t += from_ms(5 + static_cast<std::int64_t>(rng() % 40))) {
    loop.schedule_at(t, [&, id = "t" + std::to_string(next_tx++)] { submit(id); });
  }

  // Faults.
  for (SimTime t = from_ms(1500); t < fault_window - from_ms(1000);
       t += from_ms(400 + static_cast<std::int64_t>(rng() % 1600))) {
    const std::uint64_t draw = rng();
    loop.schedule_at(t, [&, draw] {
      if (!down.empty() && (draw % 2 == 0 || static_cast<int>(down.size()) == max_down)) {
        auto it = down.begin();
        std::advance(it, static_cast<long>((draw >> 8) % down.size()));
        cluster.recover(*it);
        down.erase(it);
      } else if (static_cast<int>(down.size()) < max_down) {
        // Prefer crashing the leader half of the time; that is where the
        // interesting recoveries come from.
        int victim = static_cast<int>((draw >> 8) % static_cast<std::uint64_t>(n));
        if (auto l = cluster.leader(); l && (draw >> 4) % 2 == 0) victim = *l;
        if (!down.count(victim)) {
          cluster.crash(victim);
          down.insert(victim);
          ++result.crashes;
        }
      }
    });
  }

  for (SimTime t = 0; t < fault_window + 6 * kMicrosPerSecond; t += from_ms(50)) {
    loop.schedule_at(t, [&] {
      checker.snapshot(cluster.committed());
      cluster.check_log_matching();
    });
  }
  loop.schedule_at(fault_window, [&] {
    for (int id : down) cluster.recover(id);
    down.clear();
    cluster.set_drop_probability(0.0);
  });

  loop.run_until(fault_window + 6 * kMicrosPerSecond);
  checker.snapshot(cluster.committed());
  checker.check_logs(cluster);

  for (const auto& v : cluster.violations()) result.failures.push_back("cluster: " + v);
  for (const auto& f : checker.failures()) result.failures.push_back(f);
  result.released_txs = released.size();
  result.durable_entries = checker.durable();
  result.ok = result.failures.empty();
  return result;
}

}  // namespace nsb::oracle
