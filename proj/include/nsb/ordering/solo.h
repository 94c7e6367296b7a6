#pragma once

#include <optional>
#include <unordered_set>

#include "nsb/ordering/orderer.h"

namespace nsb::ordering {

// Single orderer node: transactions go straight into the block cutter.
class SoloOrderer : public OrderingService {
 public:
  SoloOrderer(EventLoop& loop, const OrdererConfig& config, BatchSink sink,
              TraceSink trace = {});

  SubmitStatus submit(ledger::TxHandle tx) override;
  ServiceKind kind() const override { return ServiceKind::kSolo; }
  std::uint64_t batches_released() const override { return released_; }

 private:
  void arm_timer();
  void on_timer();
  void release(Batch batch);

  EventLoop& loop_;
  BlockCutter cutter_;
  BatchSink sink_;
  TraceSink trace_;
  std::unordered_set<std::string> seen_;
  std::optional<SimTime> armed_;
  std::uint64_t released_ = 0;
};

}  // namespace nsb::ordering
