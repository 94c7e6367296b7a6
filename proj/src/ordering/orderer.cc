#include "nsb/ordering/orderer.h"

#include <cstdio>

#include "nsb/ordering/kafka.h"
#include "nsb/ordering/raft.h"
#include "nsb/ordering/solo.h"

namespace nsb::ordering {

std::string_view to_string(ServiceKind kind) {
  switch (kind) {
    case ServiceKind::kSolo:
      return "solo";
    case ServiceKind::kRaft:
      return "raft";
    case ServiceKind::kKafka:
      return "kafka";
  }
  return "unknown";
}

std::optional<ServiceKind> parse_service(std::string_view name) {
  for (ServiceKind k : {ServiceKind::kSolo, ServiceKind::kRaft, ServiceKind::kKafka}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

OrdererConfig OrdererConfig::for_service(ServiceKind kind) {
  OrdererConfig c;
  c.service = kind;
  c.cluster_size = kind == ServiceKind::kSolo ? 1 : 3;
  c.kafka_ack_quorum = 2;
  return c;
}

std::string OrdererConfig::validate() const {
  if (batch_size < 1) return "batch_size must be >= 1";
  if (batch_timeout_ms <= 0) return "batch_timeout_ms must be > 0";
  switch (service) {
    case ServiceKind::kSolo:
      if (cluster_size != 1) return "solo requires cluster_size = 1";
      break;
    case ServiceKind::kRaft:
      if (cluster_size < 3 || cluster_size % 2 == 0) {
        return "raft requires an odd cluster_size >= 3";
      }
      if (election_timeout_min_ms <= 0 || election_timeout_max_ms < election_timeout_min_ms) {
        return "raft election timeout range is invalid";
      }
      if (heartbeat_ms <= 0 || heartbeat_ms >= election_timeout_min_ms) {
        return "raft heartbeat_ms must be positive and below the election timeout";
      }
      break;
    case ServiceKind::kKafka:
      if (cluster_size < 3) return "kafka requires cluster_size >= 3";
      if (kafka_ack_quorum < 1 || kafka_ack_quorum > cluster_size) {
        return "kafka_ack_quorum must lie in [1, cluster_size]";
      }
      break;
  }
  return net.validate();
}

std::string format_trace_line(const TraceEvent& ev) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", to_ms(ev.time));
  return std::string(buf) + " " + std::to_string(ev.node) + " " + ev.kind + " " +
         std::to_string(ev.term);
}

std::unique_ptr<OrderingService> make_ordering_service(EventLoop& loop,
                                                       const OrdererConfig& config,
                                                       BatchSink sink, TraceSink trace) {
  switch (config.service) {
    case ServiceKind::kSolo:
      return std::make_unique<SoloOrderer>(loop, config, std::move(sink), std::move(trace));
    case ServiceKind::kRaft:
      return std::make_unique<RaftCluster>(loop, config, std::move(sink), std::move(trace));
    case ServiceKind::kKafka:
      return std::make_unique<KafkaOrderer>(loop, config, std::move(sink), std::move(trace));
  }
  return nullptr;
}

}  // namespace nsb::ordering
