#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "nsb/common/rng.h"
#include "nsb/ordering/orderer.h"

namespace nsb::ordering {

enum class RaftRole { kFollower, kCandidate, kLeader };

std::string_view to_string(RaftRole role);

// One log entry carries a whole cut batch. `batch_id` identifies the batch
// across nodes so durability can be checked without comparing contents.
// Leaders append an empty no-op entry on election.
struct RaftEntry {
  std::uint64_t term = 0;
  std::uint64_t batch_id = 0;
  Batch batch;
};

struct RaftNodeState {
  int id = 0;
  bool alive = true;
  RaftRole role = RaftRole::kFollower;
  std::uint64_t current_term = 0;
  std::optional<int> voted_for;
  std::optional<int> leader_hint;
  // log[0] is a sentinel (term 0); real entries start at index 1.
  std::vector<RaftEntry> log{RaftEntry{}};
  std::uint64_t commit_index = 0;

  std::uint64_t last_index() const { return log.size() - 1; }
  std::uint64_t last_term() const { return log.back().term; }
};

// Raft-replicated ordering service. The leader runs the block cutter and
// proposes each cut batch as one log entry; a batch is released once it is
// committed on a strict majority. Clients reach a random live node, which
// forwards to its known leader.
class RaftCluster : public OrderingService {
 public:
  RaftCluster(EventLoop& loop, const OrdererConfig& config, BatchSink sink,
              TraceSink trace = {});

  SubmitStatus submit(ledger::TxHandle tx) override;
  ServiceKind kind() const override { return ServiceKind::kRaft; }
  std::uint64_t batches_released() const override { return released_; }

  // Fault injection.
  void crash(int node);
  void recover(int node);
  void set_drop_probability(double p) { net_.set_drop_probability(p); }

  std::size_t size() const { return nodes_.size(); }
  const RaftNodeState& node(int id) const { return nodes_.at(id).state; }
  // Live leader with the highest term, if any.
  std::optional<int> leader() const;
  std::size_t alive_count() const;

  // Safety monitors, maintained while the cluster runs.
  const std::vector<std::string>& violations() const { return violations_; }
  // (term, batch_id) of each globally committed index, starting at index 1.
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& committed() const {
    return committed_;
  }
  // Checks the log matching property across all node pairs; appends any
  // violation found and returns true when none.
  bool check_log_matching();
  std::optional<SimTime> first_leader_time() const { return first_leader_time_; }

 private:
  struct RequestVote {
    std::uint64_t term;
    int candidate;
    std::uint64_t last_log_index;
    std::uint64_t last_log_term;
  };
  struct VoteReply {
    std::uint64_t term;
    bool granted;
  };
  struct AppendEntries {
    std::uint64_t term;
    int leader;
    std::uint64_t prev_index;
    std::uint64_t prev_term;
    std::vector<RaftEntry> entries;
    std::uint64_t leader_commit;
  };
  struct AppendReply {
    std::uint64_t term;
    bool success;
    std::uint64_t match_index;
    std::uint64_t next_hint;
  };
  struct ClientTx {
    ledger::TxHandle tx;
  };
  using Message = std::variant<RequestVote, VoteReply, AppendEntries, AppendReply, ClientTx>;

  struct Node {
    RaftNodeState state;
    std::uint64_t timer_gen = 0;  // invalidates stale election timers
    std::uint64_t heartbeat_gen = 0;
    std::set<int> votes;
    std::vector<std::uint64_t> next_index;
    std::vector<std::uint64_t> match_index;
    std::optional<BlockCutter> cutter;
    std::optional<SimTime> cutter_armed;
  };

  void send(int from, int to, Message msg);
  void deliver(int from, int to, Message msg);
  void on_request_vote(int self, int from, const RequestVote& m);
  void on_vote_reply(int self, int from, const VoteReply& m);
  void on_append(int self, int from, AppendEntries& m);
  void on_append_reply(int self, int from, const AppendReply& m);
  void on_client_tx(int self, ledger::TxHandle tx);

  void reset_election_timer(int self);
  void on_election_timeout(int self);
  void become_follower(int self, std::uint64_t term);
  void become_leader(int self);
  void schedule_heartbeat(int self);
  void send_append(int self, int peer);
  void propose(int self, Batch batch);
  void advance_leader_commit(int self);
  void set_commit(int self, std::uint64_t commit);
  void arm_cutter(int self);
  void on_cutter_timer(int self);
  void emit_trace(int node, std::string kind);

  EventLoop& loop_;
  OrdererConfig config_;
  BatchSink sink_;
  TraceSink trace_;
  Network net_;
  Rng timer_rng_;
  Rng route_rng_;
  std::vector<Node> nodes_;
  std::unordered_set<std::string> seen_;
  std::map<std::uint64_t, int> leader_of_term_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> committed_;
  std::vector<std::string> violations_;
  std::uint64_t next_batch_id_ = 1;
  std::uint64_t released_ = 0;
  std::optional<SimTime> first_leader_time_;
};

}  // namespace nsb::ordering
