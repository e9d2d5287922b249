#include "ccrsim/channel.hpp"

namespace ccrsim {

Channel::Channel(EventLoop& loop, const ChannelConfig& cfg)
    : loop_(loop), cfg_(cfg), rng_(mix_seed(cfg.seed ^ 0xc4a11ed0c4a11ull)) {}

void Channel::transmit(const MacFrame& frame, SimTime ready, FrameSink* sink,
                       std::uint64_t cookie) {
  Job job;
  job.frame = frame;
  job.ready = ready < loop_.now() ? loop_.now() : ready;
  job.frame_id = next_frame_id_++;
  job.retries_left = frame.broadcast ? 0 : cfg_.mac_retry_limit;
  job.attempt = 0;
  job.sink = sink;
  job.cookie = cookie;
  if (frame.broadcast) {
    ++counters_.broadcast_frames;
  } else {
    ++counters_.unicast_frames;
  }
  pending_.push(job);
  try_start();
}

bool Channel::draw_loss() {
  if (cfg_.frame_loss_prob <= 0.0) return false;
  double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return u < cfg_.frame_loss_prob;
}

void Channel::try_start() {
  if (busy_ || pending_.empty()) return;
  const Job& top = pending_.top();
  SimTime now = loop_.now();
  if (top.ready > now) {
    // Idle until the earliest frame is ready; stale wakes are harmless.
    if (next_wake_ == kNoTime || top.ready < next_wake_) {
      next_wake_ = top.ready;
      loop_.at(top.ready, [this] {
        next_wake_ = kNoTime;
        try_start();
      });
    }
    return;
  }
  current_ = top;
  pending_.pop();
  busy_ = true;
  ++current_.attempt;
  SimTime airtime = frame_airtime(current_.frame.size, current_.frame.broadcast,
                                  cfg_);
  loop_.after(airtime, [this] { finish_current(); });
}

void Channel::finish_current() {
  busy_ = false;
  Job job = current_;
  bool lost = draw_loss();
  ++counters_.attempts;
  if (observer_) {
    SimTime end = loop_.now();
    SimTime airtime = frame_airtime(job.frame.size, job.frame.broadcast, cfg_);
    observer_->on_attempt(end - airtime, end, job.frame, lost, job.attempt);
  }
  if (lost && !job.frame.broadcast && job.retries_left > 0) {
    --job.retries_left;
    job.ready = loop_.now();
    pending_.push(job);
    try_start();
    return;
  }
  if (job.frame.broadcast) {
    (lost ? counters_.broadcast_lost : counters_.broadcast_delivered)++;
  } else {
    (lost ? counters_.unicast_lost_final : counters_.unicast_delivered)++;
  }
  // Hand the outcome over before starting the next frame so receive-side
  // reactions submitted "now" compete in FIFO order behind queued frames.
  FrameSink* sink = job.sink;
  if (sink) sink->on_frame_outcome(job.frame, job.cookie, !lost);
  try_start();
}

}  // namespace ccrsim
