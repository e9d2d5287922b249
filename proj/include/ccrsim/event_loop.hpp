#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "ccrsim/net.hpp"

namespace ccrsim {

/// Single-threaded discrete-event clock. Events at equal times fire in
/// scheduling order, which keeps runs deterministic.
class EventLoop {
 public:
  using EventId = std::uint64_t;

  SimTime now() const { return now_; }

  EventId at(SimTime t, std::function<void()> fn) {
    EventId id = ++last_id_;
    queue_.push(Entry{t < now_ ? now_ : t, id, std::move(fn)});
    return id;
  }

  EventId after(SimTime delay, std::function<void()> fn) {
    return at(now_ + delay, std::move(fn));
  }

  /// Cancels a pending event. Cancelling an already-fired event is a no-op.
  void cancel(EventId id) { cancelled_.insert(id); }

  bool empty() { return peek_time() == kNoTime; }

  /// Time of the next pending event, kNoTime when drained.
  SimTime peek_time() {
    while (!queue_.empty()) {
      auto it = cancelled_.find(queue_.top().id);
      if (it == cancelled_.end()) return queue_.top().t;
      cancelled_.erase(it);
      queue_.pop();
    }
    return kNoTime;
  }

  /// Runs a single event. Returns false when the queue is exhausted.
  bool step() {
    if (peek_time() == kNoTime) return false;
    Entry top = std::move(const_cast<Entry&>(queue_.top()));
    queue_.pop();
    now_ = top.t;
    top.fn();
    return true;
  }

  /// Runs everything in the queue.
  void run() {
    while (step()) {
    }
  }

  /// Runs all events up to and including `t`, then advances the clock to `t`.
  void run_until(SimTime t) {
    while (true) {
      SimTime next = peek_time();
      if (next == kNoTime || next > t) break;
      step();
    }
    if (now_ < t) now_ = t;
  }

 private:
  struct Entry {
    SimTime t;
    EventId id;
    std::function<void()> fn;

    bool operator>(const Entry& o) const {
      return t != o.t ? t > o.t : id > o.id;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
  std::unordered_set<EventId> cancelled_;
  SimTime now_ = 0;
  EventId last_id_ = 0;
};

}  // namespace ccrsim
