#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <variant>
#include <vector>

#include "nsb/ordering/orderer.h"

namespace nsb::ordering {

// Time at which an append is acknowledged, given each broker's confirmation
// delay: the `quorum`-th smallest delay. nullopt when fewer than `quorum`
// confirmations exist.
std::optional<SimTime> quorum_ack_delay(std::vector<SimTime> confirmation_delays,
                                        std::size_t quorum);

// Single-partition replicated log over `brokers` brokers. Every append is
// sent to all live brokers; each confirmation arrives one sampled network
// latency later. An entry is acknowledged once `quorum` brokers confirmed
// it, and entries are consumed strictly in append order. Brokers that are
// down confirm outstanding entries after they recover.
class QuorumLog {
 public:
  struct TimeToCut {
    std::uint64_t block_number;
  };
  using Record = std::variant<ledger::TxHandle, TimeToCut>;
  using Consumer = std::function<void(const Record&)>;

  QuorumLog(EventLoop& loop, std::size_t brokers, std::size_t quorum,
            Network& net, Consumer consumer);

  std::uint64_t append(Record record);

  void crash_broker(std::size_t broker);
  void recover_broker(std::size_t broker);
  std::size_t live_brokers() const;

  std::uint64_t appended() const { return entries_.size(); }
  std::uint64_t consumed() const { return consumed_; }
  std::optional<SimTime> acked_at(std::uint64_t offset) const;

 private:
  struct Entry {
    Record record;
    std::vector<bool> confirmed_by;
    std::size_t confirmations = 0;
    std::optional<SimTime> acked_at;
  };

  void request_confirmation(std::uint64_t offset, std::size_t broker);
  void confirm(std::uint64_t offset, std::size_t broker);
  void consume_ready();

  EventLoop& loop_;
  std::size_t quorum_;
  Network& net_;
  Consumer consumer_;
  std::vector<bool> broker_alive_;
  std::vector<Entry> entries_;
  std::uint64_t consumed_ = 0;
};

// Kafka-style ordering: transactions are appended to the quorum log and fed
// to the block cutter as they are consumed. A batch timeout does not cut
// directly; it appends a time-to-cut marker, and the cut happens when the
// marker is consumed (unless the size rule already cut that block).
class KafkaOrderer : public OrderingService {
 public:
  KafkaOrderer(EventLoop& loop, const OrdererConfig& config, BatchSink sink,
               TraceSink trace = {});

  SubmitStatus submit(ledger::TxHandle tx) override;
  ServiceKind kind() const override { return ServiceKind::kKafka; }
  std::uint64_t batches_released() const override { return released_; }

  QuorumLog& log() { return log_; }

 private:
  void on_record(const QuorumLog::Record& record);
  void arm_timer();
  void on_timer();
  void release(Batch batch);

  EventLoop& loop_;
  BlockCutter cutter_;
  BatchSink sink_;
  TraceSink trace_;
  Network net_;
  QuorumLog log_;
  std::unordered_set<std::string> seen_;
  std::optional<SimTime> armed_;
  std::optional<std::uint64_t> ttc_sent_for_;
  std::uint64_t released_ = 0;
};

}  // namespace nsb::ordering
