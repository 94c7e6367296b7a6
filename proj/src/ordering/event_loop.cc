#include "nsb/ordering/event_loop.h"

#include <stdexcept>

namespace nsb::ordering {

void EventLoop::schedule_at(SimTime at, Handler handler) {
  if (at < now_) throw std::logic_error("event scheduled in the past");
  queue_.push(Event{at, next_seq_++, std::move(handler)});
}

bool EventLoop::step() {
  if (queue_.empty()) return false;
  // priority_queue::top is const; move the handler out via a copy of the node.
  Event ev = std::move(const_cast<Event&>(queue_.top()));
  queue_.pop();
  now_ = ev.at;
  ++processed_;
  ev.handler();
  return true;
}

void EventLoop::run_until(SimTime until) {
  while (!queue_.empty() && queue_.top().at <= until) step();
  if (now_ < until) now_ = until;
}

void EventLoop::run() {
  while (step()) {
  }
}

}  // namespace nsb::ordering
