#include "nsb/ordering/solo.h"

namespace nsb::ordering {

SoloOrderer::SoloOrderer(EventLoop& loop, const OrdererConfig& config,
                         BatchSink sink, TraceSink trace)
    : loop_(loop),
      cutter_(config.batch_size, from_ms(config.batch_timeout_ms)),
      sink_(std::move(sink)),
      trace_(std::move(trace)) {}

SubmitStatus SoloOrderer::submit(ledger::TxHandle tx) {
  if (!seen_.insert(tx->tx_id).second) return SubmitStatus::kDuplicate;
  if (auto batch = cutter_.ordered(std::move(tx), loop_.now())) {
    release(std::move(*batch));
  } else {
    arm_timer();
  }
  return SubmitStatus::kAccepted;
}

void SoloOrderer::arm_timer() {
  const std::optional<SimTime> deadline = cutter_.deadline();
  if (!deadline || armed_ == deadline) return;
  armed_ = deadline;
  loop_.schedule_at(*deadline, [this] { on_timer(); });
}

void SoloOrderer::on_timer() {
  if (armed_ && *armed_ <= loop_.now()) armed_.reset();
  if (auto batch = cutter_.tick(loop_.now())) release(std::move(*batch));
  arm_timer();
}

void SoloOrderer::release(Batch batch) {
  if (trace_) trace_({loop_.now(), 0, "cut", 0});
  OrderedBatch out;
  out.sequence = released_++;
  out.transactions = std::move(batch);
  out.cut_time = loop_.now();
  sink_(std::move(out));
}

}  // namespace nsb::ordering
