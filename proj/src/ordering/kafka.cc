#include "nsb/ordering/kafka.h"

#include <algorithm>
#include <stdexcept>

namespace nsb::ordering {

std::optional<SimTime> quorum_ack_delay(std::vector<SimTime> confirmation_delays,
                                        std::size_t quorum) {
  if (quorum == 0 || confirmation_delays.size() < quorum) return std::nullopt;
  auto kth = confirmation_delays.begin() + static_cast<std::ptrdiff_t>(quorum - 1);
  std::nth_element(confirmation_delays.begin(), kth, confirmation_delays.end());
  return *kth;
}

QuorumLog::QuorumLog(EventLoop& loop, std::size_t brokers, std::size_t quorum,
                     Network& net, Consumer consumer)
    : loop_(loop),
      quorum_(quorum),
      net_(net),
      consumer_(std::move(consumer)),
      broker_alive_(brokers, true) {
  if (quorum_ == 0 || quorum_ > brokers) {
    throw std::invalid_argument("ack quorum must lie in [1, brokers]");
  }
}

std::uint64_t QuorumLog::append(Record record) {
  const std::uint64_t offset = entries_.size();
  entries_.push_back(Entry{std::move(record), std::vector<bool>(broker_alive_.size(), false), 0,
                           std::nullopt});
  for (std::size_t b = 0; b < broker_alive_.size(); ++b) {
    if (broker_alive_[b]) request_confirmation(offset, b);
  }
  return offset;
}

void QuorumLog::request_confirmation(std::uint64_t offset, std::size_t broker) {
  loop_.schedule_after(net_.sample_latency(),
                       [this, offset, broker] { confirm(offset, broker); });
}

void QuorumLog::confirm(std::uint64_t offset, std::size_t broker) {
  // A broker that went down before confirming re-confirms on recovery.
  if (!broker_alive_[broker]) return;
  Entry& e = entries_[offset];
  if (e.confirmed_by[broker]) return;
  e.confirmed_by[broker] = true;
  ++e.confirmations;
  if (!e.acked_at && e.confirmations >= quorum_) {
    e.acked_at = loop_.now();
    consume_ready();
  }
}

void QuorumLog::consume_ready() {
  while (consumed_ < entries_.size() && entries_[consumed_].acked_at) {
    // Copy: the consumer may append, which can reallocate entries_.
    const Record record = entries_[consumed_].record;
    ++consumed_;
    consumer_(record);
  }
}

void QuorumLog::crash_broker(std::size_t broker) { broker_alive_.at(broker) = false; }

void QuorumLog::recover_broker(std::size_t broker) {
  if (broker_alive_.at(broker)) return;
  broker_alive_[broker] = true;
  for (std::uint64_t offset = 0; offset < entries_.size(); ++offset) {
    if (!entries_[offset].confirmed_by[broker]) request_confirmation(offset, broker);
  }
}

std::size_t QuorumLog::live_brokers() const {
  return static_cast<std::size_t>(std::count(broker_alive_.begin(), broker_alive_.end(), true));
}

std::optional<SimTime> QuorumLog::acked_at(std::uint64_t offset) const {
  return entries_.at(offset).acked_at;
}

KafkaOrderer::KafkaOrderer(EventLoop& loop, const OrdererConfig& config,
                           BatchSink sink, TraceSink trace)
    : loop_(loop),
      cutter_(config.batch_size, from_ms(config.batch_timeout_ms)),
      sink_(std::move(sink)),
      trace_(std::move(trace)),
      net_(config.net, derive_seed(config.net.seed, "kafka/net")),
      log_(loop, config.cluster_size, config.kafka_ack_quorum, net_,
           [this](const QuorumLog::Record& r) { on_record(r); }) {}

SubmitStatus KafkaOrderer::submit(ledger::TxHandle tx) {
  if (!seen_.insert(tx->tx_id).second) return SubmitStatus::kDuplicate;
  log_.append(std::move(tx));
  return SubmitStatus::kAccepted;
}

void KafkaOrderer::on_record(const QuorumLog::Record& record) {
  if (const auto* tx = std::get_if<ledger::TxHandle>(&record)) {
    if (auto batch = cutter_.ordered(*tx, loop_.now())) {
      release(std::move(*batch));
    } else {
      arm_timer();
    }
    return;
  }
  const auto& ttc = std::get<QuorumLog::TimeToCut>(record);
  if (ttc.block_number != released_) return;  // stale: size rule already cut
  if (auto batch = cutter_.cut(loop_.now())) release(std::move(*batch));
}

void KafkaOrderer::arm_timer() {
  const std::optional<SimTime> deadline = cutter_.deadline();
  if (!deadline || armed_ == deadline) return;
  // A time-to-cut for this block is already in the log; it will cut.
  if (ttc_sent_for_ == released_) return;
  armed_ = deadline;
  loop_.schedule_at(std::max(*deadline, loop_.now()), [this] { on_timer(); });
}

void KafkaOrderer::on_timer() {
  if (armed_ && *armed_ <= loop_.now()) armed_.reset();
  const std::optional<SimTime> deadline = cutter_.deadline();
  if (deadline && *deadline <= loop_.now()) {
    if (ttc_sent_for_ != released_) {
      ttc_sent_for_ = released_;
      if (trace_) trace_({loop_.now(), 0, "time_to_cut", released_});
      log_.append(QuorumLog::TimeToCut{released_});
    }
    return;
  }
  arm_timer();
}

void KafkaOrderer::release(Batch batch) {
  if (trace_) trace_({loop_.now(), 0, "cut", released_});
  OrderedBatch out;
  out.sequence = released_++;
  out.transactions = std::move(batch);
  out.cut_time = loop_.now();
  sink_(std::move(out));
  arm_timer();
}

}  // namespace nsb::ordering
