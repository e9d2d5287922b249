#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ccrsim/backbone.hpp"
#include "ccrsim/channel.hpp"
#include "ccrsim/event_loop.hpp"
#include "ccrsim/message.hpp"
#include "ccrsim/routing.hpp"
#include "ccrsim/trace.hpp"

namespace ccrsim {

/// Application message moved through the simulation. Control messages carry
/// their real encoded payload; bulk content data may instead carry a
/// synthetic size so large runs need not materialize chunk bytes.
struct AppPacket {
  CcrMessage msg;
  std::uint32_t synthetic_size = 0;  // used when msg.data is empty
  /// Intended recipient for transfers carried by broadcast IP packets;
  /// other receivers ignore the message at the application layer.
  Ipv4 app_target;

  std::uint32_t payload_size() const {
    return msg.data.empty() ? synthetic_size
                            : static_cast<std::uint32_t>(msg.data.size());
  }
  int wire_size() const {
    return static_cast<int>(kHeaderSize + payload_size());
  }
};

/// Full protocol simulation: staged group formation, GO-role notification,
/// relay election, tunnel construction, content registration/advertisement,
/// and request/delivery over the CRT/PIT machinery. Single-threaded and
/// deterministic for a fixed (topology, options) pair.
class Simulation : public FrameSink, public AttemptObserver {
 public:
  struct Options {
    std::uint64_t seed = 1;
    ChannelConfig channel;
    SimTime pit_timeout = milliseconds(5000);
    SimTime sw_timeout = milliseconds(500);  // stop-and-wait
    int sw_max_retries = 3;
    std::map<int, SimTime> processing_delay;  // per device, default 0
    bool record_trace = true;
  };

  struct SetupReport {
    RelayMap relays;
    std::vector<Tunnel> tunnels;
    std::vector<std::string> failures;
  };

  struct RequestOutcome {
    bool resolved = false;
    bool satisfied = false;
    bool failure_notified = false;
    bool timed_out = false;
    std::vector<std::uint8_t> data;
    SimTime completed_at = kNoTime;
    int messages_sent = 0;  // app messages this device originated for it
  };

  struct TransferReport {
    std::vector<int> app_hops;  // device ids, endpoints included
    int broadcast_transfers = 0;
    bool delivered = false;
    std::vector<std::uint8_t> received;
    SimTime completed_at = kNoTime;
  };

  struct MessageStats {
    std::map<MsgType, int> sent_by_type;
    int broadcasts = 0;
    int total() const {
      int n = 0;
      for (auto& [t, c] : sent_by_type) n += c;
      return n;
    }
  };

  Simulation(const PhysicalTopology& topo, Options opt);
  ~Simulation() override;

  /// Staged formation: groups activate parent-first; bridge GOs notify their
  /// parent GO while their own group is still down (the only moment the
  /// exchange is deliverable), then relays are elected by seeded broadcast
  /// election and tunnels built. Runs the loop to quiescence.
  const SetupReport& setup_backbone();

  /// Client -> GO registration (stop-and-wait) followed by the advertisement
  /// wave. GO-originated content inserts locally and advertises directly.
  /// Call run() / run_until() afterwards to let the protocol quiesce.
  ContentId register_content(int device, const std::string& name,
                             std::vector<std::uint8_t> payload);

  /// Content request per §IV.A; resolves via delivery, failure notification
  /// or PIT-timeout. Returns a handle for request_outcome().
  int request_content(int device, const std::string& name);
  const RequestOutcome& request_outcome(int handle) const;

  /// Fills every device's CRT for a content id from the oracle next-hop
  /// cases (the paper's manually-configured-tables mode).
  void preload_crt(const ContentId& id, int provider);

  /// One-shot payload transfer along the backbone path (the §III.E example):
  /// each node forwards at application layer to its next hop toward `dst`.
  TransferReport backbone_transfer(int src, int dst,
                                   std::vector<std::uint8_t> payload);

  /// Generic stop-and-wait send (reliable_send): retransmits on timeout up
  /// to sw_max_retries, reports attempts. done(ok, attempts).
  void reliable_send(int device, Ipv4 dst, AppPacket pkt, bool force_broadcast,
                     std::function<void(bool, int)> done);

  void run() { loop_.run(); }
  void run_until(SimTime t) { loop_.run_until(t); }
  EventLoop& loop() { return loop_; }
  Channel& channel() { return *channel_; }
  Trace& trace() { return trace_; }
  const DeliveryRules& rules() const { return *rules_; }
  const PhysicalTopology& topology() const { return topo_; }
  const SetupReport& backbone() const { return setup_; }

  const Crt& crt_of(int device) const;
  const Pit& pit_of(int device) const;
  bool all_pits_empty() const;
  const ContentStore& store_of(int device) const;

  const MessageStats& message_stats() const { return stats_; }
  void reset_message_stats() { stats_ = {}; }

  /// Observer fired when a device installs/refreshes a CRT entry.
  std::function<void(int device, const ContentId&, SimTime)> on_crt_update;
  /// Observer fired when a device hands an app message to the IP layer.
  std::function<void(int device, const AppPacket&, bool broadcast, SimTime)>
      on_app_send;

  // FrameSink / AttemptObserver (channel internals).
  void on_frame_outcome(const MacFrame& frame, std::uint64_t cookie,
                        bool delivered) override;
  void on_attempt(SimTime start, SimTime end, const MacFrame& frame, bool lost,
                  int attempt) override;

 private:
  struct Node;
  struct InFlightIp;
  struct SwSession;
  struct RequestState;

  Node& node(int device);
  SimTime processing_delay(int device) const;
  std::uint32_t fresh_msg_id();

  // IP plumbing.
  std::uint64_t ip_send(int sender, Ipv4 dst, AppPacket pkt, bool broadcast);
  void ip_arrived(InFlightIp& ctx);
  void deliver_to_app(int device, Ipv4 from, const AppPacket& pkt);

  // Transfer-mode selection: broadcast when the sender is a bridge GO
  // sending down into its own group (unicast there is blocked).
  void app_send(int device, Ipv4 to, AppPacket pkt, bool force_broadcast);
  bool down_transfer_needs_broadcast(int device, Ipv4 to) const;

  // Protocol handlers.
  void on_app_message(int device, Ipv4 from, const AppPacket& pkt);
  void handle_go_role_notify(int device, Ipv4 from, const AppPacket& pkt);
  void handle_relay_election(int device, Ipv4 from, const AppPacket& pkt);
  void handle_registration(int device, Ipv4 from, const AppPacket& pkt);
  void handle_advertisement(int device, Ipv4 from, const AppPacket& pkt);
  void handle_request(int device, Ipv4 from, const AppPacket& pkt);
  void handle_content_data(int device, Ipv4 from, const AppPacket& pkt);
  void handle_route_failure(int device, Ipv4 from, const AppPacket& pkt);
  void handle_ack(int device, Ipv4 from, const AppPacket& pkt);

  /// GO-side advertisement wave: CRT entry, group broadcast (reliable toward
  /// the relay only while the relay still has forwarding work), upward leg
  /// through the parent group's relay when this GO bridges.
  void go_advertise(int go, const ContentId& id, NextHop own_entry,
                    Ipv4 members_next_hop, Ipv4 origin_in_group,
                    bool arrived_from_relay, int exclude_bridge);
  void relay_propagate(int relay_dev, const ContentId& id,
                       std::uint32_t msg_id, int exclude_bridge, bool send_up,
                       bool origin_is_peer);

  void install_crt(int device, const ContentId& id, NextHop hop);
  void schedule_pit_expiry(int device, SimTime deadline);

  void sw_complete(int device, std::uint32_t msg_id, MsgType ack_type);
  void sw_timeout_fired(int device, std::uint32_t msg_id);

  const PhysicalTopology& topo_;
  Options opt_;
  EventLoop loop_;
  std::unique_ptr<Channel> channel_;
  std::unique_ptr<DeliveryRules> rules_;
  std::vector<std::pair<int, IfaceKind>> active_ifaces_;
  Trace trace_;
  std::mt19937_64 proto_rng_;
  SetupReport setup_;
  bool backbone_ready_ = false;

  std::vector<std::unique_ptr<Node>> nodes_;
  std::unordered_map<std::uint64_t, std::unique_ptr<InFlightIp>> in_flight_;
  std::uint64_t next_ip_id_ = 0;
  std::map<std::pair<int, std::uint32_t>, SwSession> sessions_;
  std::vector<std::unique_ptr<RequestState>> requests_;
  std::unordered_map<ContentId, int> provider_of_;
  MessageStats stats_;
};

}  // namespace ccrsim
