#include "nsb/ordering/block_cutter.h"

#include <stdexcept>

namespace nsb::ordering {

BlockCutter::BlockCutter(std::size_t batch_size, SimTime batch_timeout)
    : batch_size_(batch_size), batch_timeout_(batch_timeout) {
  if (batch_size_ == 0) throw std::invalid_argument("batch_size must be >= 1");
  if (batch_timeout_ <= 0) throw std::invalid_argument("batch_timeout must be > 0");
}

std::optional<Batch> BlockCutter::ordered(ledger::TxHandle tx, SimTime now) {
  if (pending_.empty()) first_arrival_ = now;
  pending_.push_back(std::move(tx));
  if (pending_.size() >= batch_size_) return cut(now);
  return std::nullopt;
}

std::optional<Batch> BlockCutter::tick(SimTime now) {
  if (pending_.empty() || now - first_arrival_ < batch_timeout_) return std::nullopt;
  return cut(now);
}

std::optional<Batch> BlockCutter::cut(SimTime) {
  if (pending_.empty()) return std::nullopt;
  Batch out;
  out.swap(pending_);
  return out;
}

std::optional<SimTime> BlockCutter::deadline() const {
  if (pending_.empty()) return std::nullopt;
  return first_arrival_ + batch_timeout_;
}

void BlockCutter::clear() { pending_.clear(); }

}  // namespace nsb::ordering
