#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nsb/common/sim_time.h"
#include "nsb/ledger/types.h"

namespace nsb::ordering {

using Batch = std::vector<ledger::TxHandle>;

// Batch-size / batch-timeout cutting rules.
//
// A batch is emitted as soon as the pending set reaches `batch_size`, or once
// the oldest pending transaction has waited `batch_timeout`. The timer starts
// at the first arrival into an empty pending set and resets on every cut.
class BlockCutter {
 public:
  BlockCutter(std::size_t batch_size, SimTime batch_timeout);

  // Appends a transaction arriving at `now`; returns the batch if the size
  // rule fires.
  std::optional<Batch> ordered(ledger::TxHandle tx, SimTime now);

  // Cuts if the pending set has aged to the timeout.
  std::optional<Batch> tick(SimTime now);

  // Cuts whatever is pending, regardless of age.
  std::optional<Batch> cut(SimTime now);

  // When the timeout rule will fire for the current pending set.
  std::optional<SimTime> deadline() const;

  std::size_t pending() const { return pending_.size(); }
  std::size_t batch_size() const { return batch_size_; }
  SimTime batch_timeout() const { return batch_timeout_; }
  void clear();

 private:
  std::size_t batch_size_;
  SimTime batch_timeout_;
  Batch pending_;
  SimTime first_arrival_ = 0;
};

}  // namespace nsb::ordering
