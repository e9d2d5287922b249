#pragma once

#include <queue>
#include <random>

#include "ccrsim/event_loop.hpp"
#include "ccrsim/netmodel.hpp"

namespace ccrsim {

class Channel;

/// Receives final per-frame outcomes from the channel.
class FrameSink {
 public:
  virtual ~FrameSink() = default;
  /// `delivered` is false only after the retry budget is spent (unicast) or
  /// immediately on loss (broadcast).
  virtual void on_frame_outcome(const MacFrame& frame, std::uint64_t cookie,
                                bool delivered) = 0;
};

/// Observes individual transmission attempts (tracing / statistics).
class AttemptObserver {
 public:
  virtual ~AttemptObserver() = default;
  virtual void on_attempt(SimTime start, SimTime end, const MacFrame& frame,
                          bool lost, int attempt) = 0;
};

/// The single collision domain all groups share (§V.A): one frame in the air
/// at a time, FIFO by ready time with (device id, frame id) tie-break. Losses
/// are per-attempt Bernoulli draws; lost unicast frames retransmit up to the
/// retry limit, lost broadcast frames never do.
class Channel {
 public:
  Channel(EventLoop& loop, const ChannelConfig& cfg);

  /// Queues a frame for transmission, ready no earlier than `ready`.
  /// The sink outlives the simulation run.
  void transmit(const MacFrame& frame, SimTime ready, FrameSink* sink,
                std::uint64_t cookie);

  void set_attempt_observer(AttemptObserver* obs) { observer_ = obs; }

  const ChannelConfig& config() const { return cfg_; }

  struct Counters {
    std::uint64_t unicast_frames = 0;
    std::uint64_t unicast_delivered = 0;
    std::uint64_t unicast_lost_final = 0;
    std::uint64_t broadcast_frames = 0;
    std::uint64_t broadcast_delivered = 0;
    std::uint64_t broadcast_lost = 0;
    std::uint64_t attempts = 0;
  };
  const Counters& counters() const { return counters_; }

 private:
  struct Job {
    MacFrame frame;
    SimTime ready;
    std::uint64_t frame_id;
    int retries_left;
    int attempt;
    FrameSink* sink;
    std::uint64_t cookie;
  };
  struct JobOrder {
    bool operator()(const Job& a, const Job& b) const {
      if (a.ready != b.ready) return a.ready > b.ready;
      if (a.frame.tx_device != b.frame.tx_device)
        return a.frame.tx_device > b.frame.tx_device;
      return a.frame_id > b.frame_id;
    }
  };

  void try_start();
  void finish_current();
  bool draw_loss();

  EventLoop& loop_;
  ChannelConfig cfg_;
  std::mt19937_64 rng_;
  std::priority_queue<Job, std::vector<Job>, JobOrder> pending_;
  Job current_{};
  bool busy_ = false;
  SimTime next_wake_ = kNoTime;
  std::uint64_t next_frame_id_ = 0;
  Counters counters_;
  AttemptObserver* observer_ = nullptr;
};

}  // namespace ccrsim
