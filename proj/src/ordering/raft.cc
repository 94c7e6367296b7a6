#include "nsb/ordering/raft.h"

#include <algorithm>

namespace nsb::ordering {
namespace {

constexpr std::size_t kMaxEntriesPerAppend = 64;

}  // namespace

std::string_view to_string(RaftRole role) {
  switch (role) {
    case RaftRole::kFollower:
      return "follower";
    case RaftRole::kCandidate:
      return "candidate";
    case RaftRole::kLeader:
      return "leader";
  }
  return "unknown";
}

RaftCluster::RaftCluster(EventLoop& loop, const OrdererConfig& config,
                         BatchSink sink, TraceSink trace)
    : loop_(loop),
      config_(config),
      sink_(std::move(sink)),
      trace_(std::move(trace)),
      net_(config.net, derive_seed(config.net.seed, "raft/net")),
      timer_rng_(derive_seed(config.net.seed, "raft/timers")),
      route_rng_(derive_seed(config.net.seed, "raft/route")) {
  nodes_.resize(config.cluster_size);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    nodes_[i].state.id = static_cast<int>(i);
    reset_election_timer(static_cast<int>(i));
  }
}

void RaftCluster::emit_trace(int node, std::string kind) {
  if (trace_) trace_({loop_.now(), node, std::move(kind), nodes_[node].state.current_term});
}

std::optional<int> RaftCluster::leader() const {
  std::optional<int> best;
  for (const Node& n : nodes_) {
    if (!n.state.alive || n.state.role != RaftRole::kLeader) continue;
    if (!best || n.state.current_term > nodes_[*best].state.current_term) {
      best = n.state.id;
    }
  }
  return best;
}

std::size_t RaftCluster::alive_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& n) { return n.state.alive; }));
}

SubmitStatus RaftCluster::submit(ledger::TxHandle tx) {
  if (seen_.count(tx->tx_id)) return SubmitStatus::kDuplicate;
  if (!leader()) return SubmitStatus::kRetryLater;
  seen_.insert(tx->tx_id);
  std::vector<int> alive;
  for (const Node& n : nodes_) {
    if (n.state.alive) alive.push_back(n.state.id);
  }
  const int entry = alive[route_rng_() % alive.size()];
  on_client_tx(entry, std::move(tx));
  return SubmitStatus::kAccepted;
}

void RaftCluster::crash(int id) {
  Node& n = nodes_.at(id);
  if (!n.state.alive) return;
  n.state.alive = false;
  n.cutter.reset();
  n.cutter_armed.reset();
  ++n.timer_gen;
  ++n.heartbeat_gen;
  emit_trace(id, "crash");
}

void RaftCluster::recover(int id) {
  Node& n = nodes_.at(id);
  if (n.state.alive) return;
  // Persistent state (term, vote, log) survives; volatile state does not.
  n.state.alive = true;
  n.state.role = RaftRole::kFollower;
  n.state.commit_index = 0;
  n.state.leader_hint.reset();
  n.votes.clear();
  emit_trace(id, "recover");
  reset_election_timer(id);
}

void RaftCluster::send(int from, int to, Message msg) {
  if (!nodes_[from].state.alive) return;
  if (net_.dropped()) return;
  const SimTime latency = net_.sample_latency();
  loop_.schedule_after(latency, [this, from, to, msg = std::move(msg)]() mutable {
    deliver(from, to, std::move(msg));
  });
}

void RaftCluster::deliver(int from, int to, Message msg) {
  if (!nodes_[to].state.alive) return;
  std::visit(
      [&](auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RequestVote>) {
          on_request_vote(to, from, m);
        } else if constexpr (std::is_same_v<T, VoteReply>) {
          on_vote_reply(to, from, m);
        } else if constexpr (std::is_same_v<T, AppendEntries>) {
          on_append(to, from, m);
        } else if constexpr (std::is_same_v<T, AppendReply>) {
          on_append_reply(to, from, m);
        } else {
          on_client_tx(to, std::move(m.tx));
        }
      },
      msg);
}

void RaftCluster::reset_election_timer(int self) {
  Node& n = nodes_[self];
  const std::uint64_t gen = ++n.timer_gen;
  const std::int64_t lo = config_.election_timeout_min_ms * kMicrosPerMs;
  const std::int64_t hi = config_.election_timeout_max_ms * kMicrosPerMs;
  const SimTime timeout = lo + static_cast<SimTime>(timer_rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  loop_.schedule_after(timeout, [this, self, gen] {
    const Node& node = nodes_[self];
    if (node.state.alive && node.timer_gen == gen) on_election_timeout(self);
  });
}

void RaftCluster::on_election_timeout(int self) {
  Node& n = nodes_[self];
  if (n.state.role == RaftRole::kLeader) return;
  n.state.role = RaftRole::kCandidate;
  ++n.state.current_term;
  n.state.voted_for = self;
  n.state.leader_hint.reset();
  n.votes = {self};
  emit_trace(self, "become_candidate");
  reset_election_timer(self);
  if (n.votes.size() * 2 > nodes_.size()) {
    become_leader(self);
    return;
  }
  const RequestVote rv{n.state.current_term, self, n.state.last_index(), n.state.last_term()};
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    if (static_cast<int>(p) != self) send(self, static_cast<int>(p), rv);
  }
}

void RaftCluster::become_follower(int self, std::uint64_t term) {
  Node& n = nodes_[self];
  if (term > n.state.current_term) {
    n.state.current_term = term;
    n.state.voted_for.reset();
  }
  if (n.state.role != RaftRole::kFollower) {
    n.state.role = RaftRole::kFollower;
    // Transactions still pending in a deposed leader's cutter are lost.
    n.cutter.reset();
    n.cutter_armed.reset();
    ++n.heartbeat_gen;
    emit_trace(self, "become_follower");
  }
  reset_election_timer(self);
}

void RaftCluster::become_leader(int self) {
  Node& n = nodes_[self];
  n.state.role = RaftRole::kLeader;
  n.state.leader_hint = self;
  ++n.timer_gen;  // leaders do not run election timers
  auto [it, inserted] = leader_of_term_.emplace(n.state.current_term, self);
  if (!inserted && it->second != self) {
    violations_.push_back("election safety: term " + std::to_string(n.state.current_term) +
                          " has leaders " + std::to_string(it->second) + " and " +
                          std::to_string(self));
  }
  if (!first_leader_time_) first_leader_time_ = loop_.now();
  emit_trace(self, "become_leader");
  n.next_index.assign(nodes_.size(), n.state.last_index() + 1);
  n.match_index.assign(nodes_.size(), 0);
  n.match_index[self] = n.state.last_index();
  n.cutter.emplace(config_.batch_size, from_ms(config_.batch_timeout_ms));
  n.cutter_armed.reset();
  // A no-op entry from the new term lets earlier-term entries commit.
  propose(self, Batch{});
  schedule_heartbeat(self);
}

void RaftCluster::schedule_heartbeat(int self) {
  Node& n = nodes_[self];
  const std::uint64_t gen = ++n.heartbeat_gen;
  loop_.schedule_after(from_ms(config_.heartbeat_ms), [this, self, gen] {
    Node& node = nodes_[self];
    if (!node.state.alive || node.heartbeat_gen != gen ||
        node.state.role != RaftRole::kLeader) {
      return;
    }
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
      if (static_cast<int>(p) != self) send_append(self, static_cast<int>(p));
    }
    schedule_heartbeat(self);
  });
}

void RaftCluster::send_append(int self, int peer) {
  Node& n = nodes_[self];
  const std::uint64_t next = n.next_index[peer];
  const std::uint64_t prev = next - 1;
  AppendEntries ae;
  ae.term = n.state.current_term;
  ae.leader = self;
  ae.prev_index = prev;
  ae.prev_term = n.state.log[prev].term;
  const std::uint64_t last = std::min<std::uint64_t>(n.state.last_index(),
                                                     prev + kMaxEntriesPerAppend);
  for (std::uint64_t i = next; i <= last; ++i) ae.entries.push_back(n.state.log[i]);
  ae.leader_commit = n.state.commit_index;
  send(self, peer, std::move(ae));
}

void RaftCluster::propose(int self, Batch batch) {
  Node& n = nodes_[self];
  n.state.log.push_back(RaftEntry{n.state.current_term, next_batch_id_++, std::move(batch)});
  n.match_index[self] = n.state.last_index();
  emit_trace(self, "propose");
  advance_leader_commit(self);
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    if (static_cast<int>(p) != self) send_append(self, static_cast<int>(p));
  }
}

void RaftCluster::on_request_vote(int self, int from, const RequestVote& m) {
  Node& n = nodes_[self];
  if (m.term > n.state.current_term) become_follower(self, m.term);
  const bool log_ok = m.last_log_term > n.state.last_term() ||
                      (m.last_log_term == n.state.last_term() &&
                       m.last_log_index >= n.state.last_index());
  const bool grant = m.term == n.state.current_term && log_ok &&
                     (!n.state.voted_for || *n.state.voted_for == m.candidate);
  if (grant) {
    n.state.voted_for = m.candidate;
    reset_election_timer(self);
  }
  send(self, from, VoteReply{n.state.current_term, grant});
}

void RaftCluster::on_vote_reply(int self, int from, const VoteReply& m) {
  Node& n = nodes_[self];
  if (m.term > n.state.current_term) {
    become_follower(self, m.term);
    return;
  }
  if (n.state.role != RaftRole::kCandidate || m.term != n.state.current_term || !m.granted) {
    return;
  }
  n.votes.insert(from);
  if (n.votes.size() * 2 > nodes_.size()) become_leader(self);
}

void RaftCluster::on_append(int self, int from, AppendEntries& m) {
  Node& n = nodes_[self];
  if (m.term < n.state.current_term) {
    send(self, from, AppendReply{n.state.current_term, false, 0, 0});
    return;
  }
  if (m.term > n.state.current_term || n.state.role != RaftRole::kFollower) {
    become_follower(self, m.term);
  } else {
    reset_election_timer(self);
  }
  n.state.leader_hint = m.leader;

  if (m.prev_index > n.state.last_index()) {
    send(self, from, AppendReply{n.state.current_term, false, 0, n.state.last_index() + 1});
    return;
  }
  if (n.state.log[m.prev_index].term != m.prev_term) {
    // Skip back over the whole conflicting term.
    std::uint64_t hint = m.prev_index;
    const std::uint64_t bad_term = n.state.log[m.prev_index].term;
    while (hint > 1 && n.state.log[hint - 1].term == bad_term) --hint;
    send(self, from, AppendReply{n.state.current_term, false, 0, std::max<std::uint64_t>(hint, 1)});
    return;
  }

  std::uint64_t index = m.prev_index;
  for (RaftEntry& e : m.entries) {
    ++index;
    if (index <= n.state.last_index()) {
      if (n.state.log[index].term == e.term) continue;
      // Dropping a stale entry that sits where a different entry committed
      // is normal catch-up; dropping the committed entry itself is not.
      const RaftEntry& old = n.state.log[index];
      const bool was_committed =
          index <= committed_.size() && committed_[index - 1] ==
                                            std::make_pair(old.term, old.batch_id);
      if (was_committed || index <= n.state.commit_index) {
        violations_.push_back("durability: node " + std::to_string(self) +
                              " truncating committed index " + std::to_string(index));
      }
      n.state.log.resize(index);
    }
    n.state.log.push_back(std::move(e));
  }
  const std::uint64_t last_new = m.prev_index + m.entries.size();
  if (m.leader_commit > n.state.commit_index) {
    set_commit(self, std::min(m.leader_commit, last_new));
  }
  send(self, from, AppendReply{n.state.current_term, true, last_new, last_new + 1});
}

void RaftCluster::on_append_reply(int self, int from, const AppendReply& m) {
  Node& n = nodes_[self];
  if (m.term > n.state.current_term) {
    become_follower(self, m.term);
    return;
  }
  if (n.state.role != RaftRole::kLeader || m.term != n.state.current_term) return;
  if (m.success) {
    n.match_index[from] = std::max(n.match_index[from], m.match_index);
    n.next_index[from] = n.match_index[from] + 1;
    advance_leader_commit(self);
    if (n.next_index[from] <= n.state.last_index() &&
        n.next_index[from] + kMaxEntriesPerAppend <= n.state.last_index() + 1) {
      // Long catch-up: keep streaming without waiting for the heartbeat.
      send_append(self, from);
    }
  } else {
    const std::uint64_t lowered = std::min(m.next_hint, n.next_index[from] - 1);
    n.next_index[from] = std::max<std::uint64_t>(1, std::max(lowered, n.match_index[from] + 1));
    send_append(self, from);
  }
}

void RaftCluster::advance_leader_commit(int self) {
  Node& n = nodes_[self];
  for (std::uint64_t idx = n.state.last_index(); idx > n.state.commit_index; --idx) {
    if (n.state.log[idx].term != n.state.current_term) break;
    std::size_t replicas = 0;
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
      if (n.match_index[p] >= idx) ++replicas;
    }
    if (replicas * 2 > nodes_.size()) {
      set_commit(self, idx);
      return;
    }
  }
}

void RaftCluster::set_commit(int self, std::uint64_t commit) {
  Node& n = nodes_[self];
  if (commit <= n.state.commit_index) return;
  for (std::uint64_t i = n.state.commit_index + 1; i <= commit; ++i) {
    const RaftEntry& e = n.state.log[i];
    if (i <= committed_.size()) {
      const auto& seen = committed_[i - 1];
      if (seen.first != e.term || seen.second != e.batch_id) {
        violations_.push_back("committed entry mismatch at index " + std::to_string(i) +
                              " on node " + std::to_string(self));
      }
      continue;
    }
    committed_.emplace_back(e.term, e.batch_id);
    if (!e.batch.empty()) {
      OrderedBatch out;
      out.sequence = released_++;
      out.transactions = e.batch;
      out.cut_time = loop_.now();
      sink_(std::move(out));
    }
  }
  n.state.commit_index = commit;
  emit_trace(self, "commit");
}

void RaftCluster::on_client_tx(int self, ledger::TxHandle tx) {
  Node& n = nodes_[self];
  if (n.state.role == RaftRole::kLeader) {
    if (auto batch = n.cutter->ordered(std::move(tx), loop_.now())) {
      propose(self, std::move(*batch));
    }
    arm_cutter(self);
    return;
  }
  if (n.state.leader_hint && *n.state.leader_hint != self) {
    send(self, *n.state.leader_hint, ClientTx{std::move(tx)});
    return;
  }
  emit_trace(self, "client_tx_dropped");
}

void RaftCluster::arm_cutter(int self) {
  Node& n = nodes_[self];
  if (!n.cutter) return;
  const std::optional<SimTime> deadline = n.cutter->deadline();
  if (!deadline || n.cutter_armed == deadline) return;
  n.cutter_armed = deadline;
  const std::uint64_t term = n.state.current_term;
  loop_.schedule_at(*deadline, [this, self, term] {
    Node& node = nodes_[self];
    if (!node.state.alive || node.state.role != RaftRole::kLeader ||
        node.state.current_term != term) {
      return;
    }
    on_cutter_timer(self);
  });
}

void RaftCluster::on_cutter_timer(int self) {
  Node& n = nodes_[self];
  if (n.cutter_armed && *n.cutter_armed <= loop_.now()) n.cutter_armed.reset();
  if (auto batch = n.cutter->tick(loop_.now())) propose(self, std::move(*batch));
  arm_cutter(self);
}

bool RaftCluster::check_log_matching() {
  bool ok = true;
  for (std::size_t a = 0; a < nodes_.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
      const auto& la = nodes_[a].state.log;
      const auto& lb = nodes_[b].state.log;
      std::uint64_t top = std::min(la.size(), lb.size());
      std::uint64_t match = 0;
      for (std::uint64_t i = top; i-- > 1;) {
        if (la[i].term == lb[i].term) {
          match = i;
          break;
        }
      }
      for (std::uint64_t i = 1; i <= match; ++i) {
        if (la[i].term != lb[i].term || la[i].batch_id != lb[i].batch_id) {
          violations_.push_back("log matching: nodes " + std::to_string(a) + "," +
                                std::to_string(b) + " diverge at " + std::to_string(i) +
                                " below matching index " + std::to_string(match));
          ok = false;
          break;
        }
      }
    }
  }
  return ok;
}

}  // namespace nsb::ordering
