#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "nsb/common/sim_time.h"

namespace nsb::ordering {

// Deterministic discrete-event loop. Events at equal times run in scheduling
// order (FIFO by sequence number).
class EventLoop {
 public:
  using Handler = std::function<void()>;

  SimTime now() const { return now_; }

  void schedule_at(SimTime at, Handler handler);
  void schedule_after(SimTime delay, Handler handler) {
    schedule_at(now_ + delay, std::move(handler));
  }

  // Runs one event; false when the queue is empty.
  bool step();
  // Runs every event with time <= `until`, then advances the clock to it.
  void run_until(SimTime until);
  void run();

  bool idle() const { return queue_.empty(); }
  std::uint64_t events_processed() const { return processed_; }

 private:
  struct Event {
    SimTime at;
    std::uint64_t seq;
    Handler handler;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
};

}  // namespace nsb::ordering
