#include "nsb/workload/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>

#include "nsb/admission/solver.h"
#include "nsb/contracts/registry.h"
#include "nsb/contracts/transfer.h"
#include "nsb/ledger/chain.h"
#include "nsb/metrics/collector.h"
#include "nsb/ordering/orderer.h"
#include "nsb/workload/demand.h"
#include "nsb/workload/matchmaker.h"
#include "nsb/workload/opening.h"

namespace nsb::workload {
namespace {

using contracts::Direction;
using contracts::SliceRequest;
using ledger::TxValidity;

// Requests larger than this go to the greedy admission policy instead of
// the exact solver.
constexpr std::size_t kExactAdmissionLimit = 25;
// Simulated time allowed for leader election and the opening blocks.
constexpr SimTime kOpeningDeadline = 120 * kMicrosPerSecond;

struct Pending {
  TenantId requester = 0;
  TenantId giver = 0;
  TenantId receiver = 0;
  SliceVector amounts{};
  SimTime submit_time = 0;
};

struct Queued {
  SliceRequest sr;
  SimTime submit_time = 0;
  std::uint64_t index = 0;
};

struct Channel {
  std::size_t index = 0;
  std::string name;
  std::optional<KeyPair> ib_key;
  std::vector<KeyPair> tenant_keys;
  OpeningPlan plan;
  std::unique_ptr<Matchmaker> matchmaker;
  ledger::Ledger ledger;
  std::unique_ptr<ordering::OrderingService> orderer;
  std::map<std::uint64_t, ordering::OrderedBatch> reorder;
  std::uint64_t next_sequence = 0;
  std::string opening_tx_id;
  bool opened = false;
  std::vector<TenantId> eligible;  // sorted
  std::map<std::string, Pending> pending;
  SliceVector pool_reserved{};
  std::vector<double> valuations;  // batch admission only
  std::vector<Queued> queue;
  std::vector<std::string> trace;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg)
      : cfg_(cfg),
        dist_{cfg.demand_low, cfg.demand_high, cfg.demand_alpha, cfg.demand_beta},
        workload_rng_(make_rng(cfg.seed, "workload")),
        arrival_rng_(make_rng(cfg.seed, "arrivals")),
        client_net_(client_model(cfg), derive_seed(cfg.seed, "client-net")) {}

  ScenarioResult run();

 private:
  static ordering::NetworkModel client_model(const ScenarioConfig& cfg) {
    ordering::NetworkModel m = cfg.consensus.net;
    m.drop_probability = 0.0;
    return m;
  }

  void setup_channel(std::size_t k);
  void submit_to_orderer(Channel& ch, ledger::TxHandle tx);
  void on_batch(Channel& ch, ordering::OrderedBatch batch);
  void commit_ready(Channel& ch);
  void commit_batch(Channel& ch, const ordering::OrderedBatch& batch);
  void start_transfer();
  void schedule_arrival(std::uint64_t n, SimTime at);
  void on_arrival(std::uint64_t n);
  void endorse(Channel& ch, SliceRequest sr, SimTime submit_time, std::uint64_t n);
  void record_collision(const std::string& reason, const std::string& tx_id, SimTime submit_time);
  void run_admission_epoch();
  void refresh_eligibility(Channel& ch, TenantId id);
  std::int64_t remaining(const Channel& ch, TenantId id) const;
  SliceVector remaining_vector(const Channel& ch, TenantId id) const;
  SimTime transfer_end() const {
    return transfer_start_ + static_cast<SimTime>(std::llround(cfg_.duration_s * kMicrosPerSecond));
  }

  ScenarioConfig cfg_;
  DemandDistribution dist_;
  Rng workload_rng_;
  Rng arrival_rng_;
  ordering::EventLoop loop_;
  ordering::Network client_net_;
  std::vector<std::unique_ptr<Channel>> channels_;
  metrics::MetricsCollector collector_;
  metrics::MetricsReport report_;
  bool transfer_started_ = false;
  SimTime transfer_start_ = 0;
  std::int64_t skipped_no_eligible_ = 0;
  std::int64_t admission_epochs_ = 0;
  std::int64_t admitted_ = 0;
  std::int64_t not_admitted_ = 0;
  std::int64_t admission_revenue_ = 0;
};

void Simulation::setup_channel(std::size_t k) {
  auto ch = std::make_unique<Channel>();
  Channel& c = *ch;
  c.index = k;
  c.name = "ib" + std::to_string(k);
  c.ib_key = KeyPair::from_seed(derive_key_seed(cfg_.seed, c.name + "/ib-key"));

  Rng opening_rng = make_rng(cfg_.seed, c.name + "/opening");
  c.plan = run_opening(cfg_, opening_rng);
  c.tenant_keys.reserve(cfg_.consortium_size);
  for (TenantId id = 0; id < cfg_.consortium_size; ++id) {
    c.tenant_keys.push_back(
        KeyPair::from_seed(derive_key_seed(cfg_.seed, c.name + "/tenant/" + std::to_string(id))));
    contracts::TenantAccount acc = c.plan.tenants.at(id);
    acc.public_id = c.tenant_keys.back().public_id();
    c.plan.tenants.add(acc);
  }
  c.matchmaker = std::make_unique<Matchmaker>(c.plan.tenants);
  if (cfg_.admission == AdmissionMode::kBatch) {
    std::uniform_real_distribution<double> val(1.0, 10.0);
    for (std::size_t i = 0; i < cfg_.consortium_size; ++i) c.valuations.push_back(val(opening_rng));
  }

  const std::vector<std::int64_t> r(contracts::kSliceResources, cfg_.registry_units);
  const ledger::Block& genesis = c.ledger.bootstrap(contracts::make_genesis(*c.ib_key, c.name, r, 0));
  collector_.on_block(0, ledger::serialized_size(genesis));

  ordering::TraceSink trace;
  if (cfg_.trace) {
    trace = [&c](const ordering::TraceEvent& ev) { c.trace.push_back(ordering::format_trace_line(ev)); };
  }
  const auto orderer_cfg = effective_orderer(cfg_, derive_seed(cfg_.seed, c.name + "/orderer-net"));
  c.orderer = ordering::make_ordering_service(
      loop_, orderer_cfg, [this, &c](ordering::OrderedBatch b) { on_batch(c, std::move(b)); }, trace);

  // The opening: one IB transaction moving the equal split out of the registry.
  ledger::Transaction tx;
  tx.tx_id = c.name + "/opening";
  tx.sender = c.ib_key->public_id();
  tx.channel = c.name;
  tx.payload = contracts::encode_opening(c.plan.allocations);
  auto effect = contracts::opening_effect(c.ledger.state(), c.plan.allocations);
  tx.read_set = std::move(effect.read_set);
  tx.write_set = std::move(effect.write_set);
  c.opening_tx_id = tx.tx_id;
  auto handle = std::make_shared<const ledger::Transaction>(ledger::sign_transaction(std::move(tx), *c.ib_key));
  channels_.push_back(std::move(ch));
  submit_to_orderer(c, std::move(handle));
}

void Simulation::submit_to_orderer(Channel& ch, ledger::TxHandle tx) {
  loop_.schedule_after(client_net_.sample_latency(), [this, &ch, tx] {
    if (ch.orderer->submit(tx) == ordering::SubmitStatus::kRetryLater) {
      loop_.schedule_after(from_ms_f(cfg_.retry_ms), [this, &ch, tx] { submit_to_orderer(ch, tx); });
    }
  });
}

void Simulation::on_batch(Channel& ch, ordering::OrderedBatch batch) {
  const std::uint64_t seq = batch.sequence;
  auto shared = std::make_shared<ordering::OrderedBatch>(std::move(batch));
  loop_.schedule_after(client_net_.sample_latency(), [this, &ch, seq, shared] {
    ch.reorder.emplace(seq, std::move(*shared));
    commit_ready(ch);
  });
}

void Simulation::commit_ready(Channel& ch) {
  for (auto it = ch.reorder.find(ch.next_sequence); it != ch.reorder.end();
       it = ch.reorder.find(ch.next_sequence)) {
    commit_batch(ch, it->second);
    ch.reorder.erase(it);
    ++ch.next_sequence;
  }
}

void Simulation::commit_batch(Channel& ch, const ordering::OrderedBatch& batch) {
  std::vector<ledger::Transaction> txs;
  txs.reserve(batch.transactions.size());
  for (const auto& h : batch.transactions) txs.push_back(*h);
  const ledger::Block& block = ch.ledger.commit(std::move(txs), batch.cut_time);
  const SimTime now = loop_.now();
  collector_.on_block(now, ledger::serialized_size(block));

  for (std::size_t i = 0; i < block.transactions.size(); ++i) {
    const auto& tx = block.transactions[i];
    const TxValidity flag = block.validity[i];
    if (tx.tx_id == ch.opening_tx_id) {
      if (flag != TxValidity::kCommitted) {
        report_.errors.push_back(ch.name + ": opening transaction rejected");
        continue;
      }
      ch.opened = true;
      const bool all = std::all_of(channels_.begin(), channels_.end(),
                                   [](const auto& c) { return c->opened; });
      if (all && channels_.size() == cfg_.num_ibs) start_transfer();
      continue;
    }
    auto it = ch.pending.find(tx.tx_id);
    if (it == ch.pending.end()) continue;  // duplicate delivery
    const Pending p = it->second;
    ch.pending.erase(it);
    collector_.on_ordered();
    collector_.on_outcome(flag, tx.tx_id, p.submit_time, now);
    ch.matchmaker->release(p.giver, p.receiver, p.amounts);
    if (p.giver == ledger::kRegistryOwner) {
      for (std::size_t r = 0; r < p.amounts.size(); ++r) ch.pool_reserved[r] -= p.amounts[r];
    }
    if (flag == TxValidity::kCommitted) {
      refresh_eligibility(ch, p.giver);
      refresh_eligibility(ch, p.receiver);
    }
  }
  if (!ch.ledger.state().check_conservation()) {
    report_.conservation_ok = false;
    report_.errors.push_back(ch.name + ": conservation broken at height " +
                             std::to_string(block.height));
  }
}

std::int64_t Simulation::remaining(const Channel& ch, TenantId id) const {
  // Intent left over in some type that is smaller than the smallest request
  // a tenant can issue can never be served; the tenant counts as satisfied.
  const SliceVector v = remaining_vector(ch, id);
  const auto& base = ch.plan.tenants.at(id).base;
  std::int64_t slack = std::numeric_limits<std::int64_t>::max();
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::int64_t quantum =
        std::max<std::int64_t>(1, std::llround(cfg_.demand_low / 100.0 * static_cast<double>(base[r])));
    slack = std::min(slack, v[r] - quantum + 1);
  }
  return slack;
}

SliceVector Simulation::remaining_vector(const Channel& ch, TenantId id) const {
  const auto& acc = ch.plan.tenants.at(id);
  const auto& state = ch.ledger.state();
  SliceVector out{};
  for (contracts::ResourceType r = 0; r < contracts::kSliceResources; ++r) {
    if (acc.seeker()) {
      out[r] = contracts::remaining_need(state, ch.plan.tenants, id, r);
    } else if (acc.freer()) {
      out[r] = contracts::available(state, ch.plan.tenants, id, r);
    }
  }
  return out;
}

void Simulation::refresh_eligibility(Channel& ch, TenantId id) {
  if (id == ledger::kRegistryOwner) return;
  if (remaining(ch, id) > 0) return;
  auto it = std::lower_bound(ch.eligible.begin(), ch.eligible.end(), id);
  if (it != ch.eligible.end() && *it == id) ch.eligible.erase(it);
}

void Simulation::start_transfer() {
  transfer_started_ = true;
  transfer_start_ = loop_.now();
  collector_.set_transfer_start(transfer_start_);
  for (auto& ch : channels_) {
    for (const auto& [id, acc] : ch->plan.tenants.accounts()) {
      if (remaining(*ch, id) > 0) ch->eligible.push_back(id);
    }
  }
  schedule_arrival(0, transfer_start_);
  if (cfg_.admission == AdmissionMode::kBatch) {
    const SimTime epoch = from_ms_f(cfg_.admission_epoch_ms);
    for (SimTime t = transfer_start_ + epoch; t <= transfer_end() + epoch; t += epoch) {
      loop_.schedule_at(t, [this] { run_admission_epoch(); });
    }
  }
}

void Simulation::schedule_arrival(std::uint64_t n, SimTime at) {
  if (at >= transfer_end()) return;
  loop_.schedule_at(at, [this, n] { on_arrival(n); });
}

void Simulation::on_arrival(std::uint64_t n) {
  const SimTime now = loop_.now();
  // Schedule the next arrival first so the stream is independent of outcomes.
  SimTime next;
  if (cfg_.arrival == ArrivalMode::kPoisson) {
    const double gap_s = std::exponential_distribution<double>(cfg_.sr_rate)(arrival_rng_);
    next = now + std::max<SimTime>(1, static_cast<SimTime>(std::llround(gap_s * kMicrosPerSecond)));
  } else {
    next = transfer_start_ +
           static_cast<SimTime>(std::llround(static_cast<double>(n + 1) * kMicrosPerSecond / cfg_.sr_rate));
  }
  schedule_arrival(n + 1, next);

  Channel& ch = *channels_[n % channels_.size()];
  if (ch.eligible.empty()) {
    ++skipped_no_eligible_;
    return;
  }
  const TenantId requester = ch.eligible[workload_rng_() % ch.eligible.size()];
  auto sr = generate_sr(ch.plan.tenants.at(requester), remaining_vector(ch, requester), dist_,
                        workload_rng_);
  if (!sr) {
    refresh_eligibility(ch, requester);
    ++skipped_no_eligible_;
    return;
  }
  collector_.on_submitted(now);
  if (cfg_.admission == AdmissionMode::kBatch) {
    if (sr->direction == Direction::kAcquire) {
      ch.queue.push_back({*sr, now, n});
      return;
    }
    sr->counterparty = ledger::kRegistryOwner;
  } else {
    sr->counterparty = ch.matchmaker->resolve(*sr, ch.ledger.state());
  }
  endorse(ch, *sr, now, n);
}

void Simulation::record_collision(const std::string& reason, const std::string& tx_id,
                                  SimTime submit_time) {
  ++report_.collision_reasons[reason];
  collector_.on_outcome(TxValidity::kSrCollision, tx_id, submit_time, loop_.now());
}

void Simulation::endorse(Channel& ch, SliceRequest sr, SimTime submit_time, std::uint64_t n) {
  const std::string tx_id = ch.name + "/sr" + std::to_string(n);
  contracts::TransferOutcome outcome;
  try {
    outcome = contracts::simulate_transfer(ch.ledger.state(), ch.plan.tenants, sr);
  } catch (const std::exception& e) {
    report_.errors.push_back(tx_id + ": " + e.what());
    record_collision("ERROR", tx_id, submit_time);
    return;
  }
  if (const auto* col = std::get_if<contracts::Collision>(&outcome)) {
    record_collision(std::string(contracts::to_string(col->reason)), tx_id, submit_time);
    return;
  }
  auto& effect = std::get<contracts::ContractEffect>(outcome);
  const bool acquire = sr.direction == Direction::kAcquire;
  Pending p;
  p.requester = sr.requester;
  p.giver = acquire ? *sr.counterparty : sr.requester;
  p.receiver = acquire ? sr.requester : *sr.counterparty;
  p.amounts = contracts::request_amounts(ch.plan.tenants.at(sr.requester), sr);
  p.submit_time = submit_time;
  ch.matchmaker->reserve(p.giver, p.receiver, p.amounts);
  if (p.giver == ledger::kRegistryOwner) {
    for (std::size_t r = 0; r < p.amounts.size(); ++r) ch.pool_reserved[r] += p.amounts[r];
  }

  ledger::Transaction tx;
  tx.tx_id = tx_id;
  tx.sender = ch.tenant_keys[sr.requester].public_id();
  tx.channel = ch.name;
  tx.payload = contracts::encode_transfer({sr.requester, *sr.counterparty, sr.direction, p.amounts});
  tx.read_set = std::move(effect.read_set);
  tx.write_set = std::move(effect.write_set);
  tx.submit_time = submit_time;
  auto handle = std::make_shared<const ledger::Transaction>(
      ledger::sign_transaction(std::move(tx), ch.tenant_keys[sr.requester]));
  ch.pending.emplace(tx_id, p);
  loop_.schedule_after(from_ms_f(cfg_.service_time_ms),
                       [this, &ch, handle] { submit_to_orderer(ch, handle); });
}

void Simulation::run_admission_epoch() {
  ++admission_epochs_;
  for (auto& chp : channels_) {
    Channel& ch = *chp;
    if (ch.queue.empty()) continue;
    std::vector<Queued> queue;
    queue.swap(ch.queue);

    admission::Matrix pi, theta;
    for (const auto& q : queue) {
      const auto amounts = contracts::request_amounts(ch.plan.tenants.at(q.sr.requester), q.sr);
      std::vector<std::int64_t> d(amounts.begin(), amounts.end());
      std::vector<std::int64_t> p;
      for (std::int64_t a : amounts) {
        p.push_back(std::llround(static_cast<double>(a) * ch.valuations[q.sr.requester]));
      }
      pi.push_back(std::move(d));
      theta.push_back(std::move(p));
    }
    std::vector<std::int64_t> cap;
    for (contracts::ResourceType r = 0; r < contracts::kSliceResources; ++r) {
      cap.push_back(std::max<std::int64_t>(
          0, ch.ledger.state().value({ledger::kRegistryOwner, r}) - ch.pool_reserved[r]));
    }
    const auto inst = admission::make_instance(std::move(pi), std::move(theta), std::move(cap));
    const auto decision = inst.num_requests() <= kExactAdmissionLimit ? admission::solve_exact(inst)
                                                                      : admission::solve_greedy(inst);
    admission_revenue_ += decision.objective;
    for (std::size_t j = 0; j < queue.size(); ++j) {
      SliceRequest sr = queue[j].sr;
      if (decision.y[j]) {
        ++admitted_;
        sr.counterparty = ledger::kRegistryOwner;
        endorse(ch, sr, queue[j].submit_time, queue[j].index);
      } else {
        ++not_admitted_;
        record_collision("NOT_ADMITTED", ch.name + "/sr" + std::to_string(queue[j].index),
                         queue[j].submit_time);
      }
    }
  }
}

ScenarioResult Simulation::run() {
  for (std::size_t k = 0; k < cfg_.num_ibs; ++k) setup_channel(k);

  while (!transfer_started_ && loop_.now() < kOpeningDeadline && loop_.step()) {
  }
  if (!transfer_started_) throw std::runtime_error("opening phase did not complete");
  loop_.run_until(transfer_end() + static_cast<SimTime>(std::llround(cfg_.drain_s * kMicrosPerSecond)));

  std::int64_t in_flight = 0;
  std::int64_t satisfied = 0;
  nlohmann::ordered_json channels_json = nlohmann::ordered_json::array();
  for (const auto& ch : channels_) {
    in_flight += static_cast<std::int64_t>(ch->pending.size() + ch->queue.size());
    satisfied += static_cast<std::int64_t>(cfg_.consortium_size - ch->eligible.size());
    if (!ch->ledger.state().check_conservation()) report_.conservation_ok = false;
    channels_json.push_back({{"name", ch->name},
                             {"blocks", ch->ledger.chain().size()},
                             {"bytes", ch->ledger.total_bytes()}});
  }

  report_.config = config_to_json(cfg_);
  report_.seed = cfg_.seed;
  metrics::summarize(report_, collector_, cfg_.duration_s, in_flight);
  report_.satisfied_tenants = satisfied;
  report_.extra["skipped_no_eligible"] = skipped_no_eligible_;
  report_.extra["channels"] = std::move(channels_json);
  if (cfg_.admission == AdmissionMode::kBatch) {
    report_.extra["admission"] = {{"epochs", admission_epochs_},
                                  {"admitted", admitted_},
                                  {"not_admitted", not_admitted_},
                                  {"revenue", admission_revenue_}};
  }

  ScenarioResult result;
  result.report = std::move(report_);
  for (auto& ch : channels_) {
    result.channels.push_back({ch->name, ch->ledger.chain(), std::move(ch->trace)});
  }
  return result;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  if (auto errs = validate(cfg); !errs.empty()) {
    std::string msg = "invalid scenario config: " + errs.front();
    for (std::size_t i = 1; i < errs.size(); ++i) msg += "; " + errs[i];
    throw std::invalid_argument(msg);
  }
  return Simulation(cfg).run();
}

}  // namespace nsb::workload
