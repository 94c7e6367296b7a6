#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "nsb/ordering/block_cutter.h"
#include "nsb/ordering/event_loop.h"
#include "nsb/ordering/network.h"

namespace nsb::ordering {

enum class ServiceKind { kSolo, kRaft, kKafka };

std::string_view to_string(ServiceKind kind);
std::optional<ServiceKind> parse_service(std::string_view name);

struct OrdererConfig {
  std::size_t batch_size = 20;
  std::int64_t batch_timeout_ms = 300;
  ServiceKind service = ServiceKind::kSolo;
  // 1 for SOLO, odd >= 3 for RAFT, >= 3 brokers for KAFKA.
  std::size_t cluster_size = 1;
  std::size_t kafka_ack_quorum = 2;
  std::int64_t election_timeout_min_ms = 1000;
  std::int64_t election_timeout_max_ms = 2000;
  std::int64_t heartbeat_ms = 100;
  NetworkModel net;

  // Default cluster shape per service: SOLO 1, RAFT 3, KAFKA 3 with quorum 2.
  static OrdererConfig for_service(ServiceKind kind);

  std::string validate() const;
};

// A cut batch as released by the ordering service, in delivery order.
struct OrderedBatch {
  std::uint64_t sequence = 0;
  Batch transactions;
  SimTime cut_time = 0;
};

using BatchSink = std::function<void(OrderedBatch)>;

struct TraceEvent {
  SimTime time = 0;
  int node = 0;
  std::string kind;
  std::uint64_t term = 0;
};

using TraceSink = std::function<void(const TraceEvent&)>;

// "time_ms node kind term", e.g. "1503.120 2 become_leader 1".
std::string format_trace_line(const TraceEvent& ev);

enum class SubmitStatus {
  kAccepted,
  kDuplicate,
  // No leader is currently available (RAFT election); the caller requeues.
  kRetryLater,
};

// Turns submitted transactions into a totally ordered stream of batches.
// `submit` is called when the transaction reaches the ordering service, at
// the event loop's current time.
class OrderingService {
 public:
  virtual ~OrderingService() = default;

  virtual SubmitStatus submit(ledger::TxHandle tx) = 0;
  virtual ServiceKind kind() const = 0;
  virtual std::uint64_t batches_released() const = 0;
};

std::unique_ptr<OrderingService> make_ordering_service(EventLoop& loop,
                                                       const OrdererConfig& config,
                                                       BatchSink sink,
                                                       TraceSink trace = {});

}  // namespace nsb::ordering
