#pragma once

#include <map>
#include <string>
#include <vector>

#include "ccrsim/topology.hpp"

namespace ccrsim {

enum class Egress { P2P, WiFi, Loopback };

const char* to_string(Egress e);

/// Shared-channel parameters. Rates follow §V.A: unicast up to 54 Mbit/s,
/// broadcast pinned to the 6 Mbit/s base rate. Per-frame overhead lumps MAC
/// headers; the fixed airtime lumps preamble/ACK/IFS.
struct ChannelConfig {
  double unicast_rate_mbps = 54.0;
  double broadcast_rate_mbps = 6.0;
  int per_frame_overhead_bytes = 40;
  SimTime per_frame_fixed_overhead = microseconds(100);
  double frame_loss_prob = 0.0;
  int mac_retry_limit = 4;  // unicast only; broadcast is never retransmitted
  std::uint64_t seed = 0;
};

/// One 802.11-style frame: transmitter/receiver (per hop) and source/
/// destination (end to end). An AP-relayed hop changes ta/ra while sa/da are
/// preserved.
struct MacFrame {
  MacAddr ta, ra, sa, da;
  int tx_device = -1;  // device transmitting this frame
  int rx_device = -1;  // intended receiver (-1 for broadcast)
  Ipv4 src_ip, dst_ip;
  int size = 0;  // IP payload bytes carried
  bool broadcast = false;
};

/// Outcome of one IP transfer attempt under the §III.B rules.
struct DeliveryVerdict {
  enum class Outcome {
    Delivered,
    BlockedLoopback,        // destination is one of the sender's own addresses
    BlockedSourceConflict,  // receiver discards: src ip matches its own
    BlockedWrongEgress,     // routed out an interface that cannot reach dst
    LostOnChannel,          // timed runs only, after MAC retries
  };

  Outcome outcome = Outcome::Delivered;
  std::vector<int> receivers;          // devices that got the packet at IP
  int conflict_device = -1;            // for BlockedSourceConflict
  std::vector<MacFrame> mac_hops;      // frames put on the air, in order
  /// Broadcast only: bridge legacy clients that received the frame but
  /// discarded the packet at IP because of the source address conflict.
  std::vector<int> source_conflict_discards;

  bool delivered() const { return outcome == Outcome::Delivered; }
};

const char* to_string(DeliveryVerdict::Outcome o);

/// Airtime of one frame: (size + overhead) * 8 / rate + fixed overhead.
/// Broadcast frames use the broadcast rate.
SimTime frame_airtime(int size_bytes, bool broadcast, const ChannelConfig& cfg);

/// The §III.B rule engine over an addressed topology: egress selection,
/// AP relaying at MAC layer, loopback capture and source-conflict discards.
/// Pure verdicts; the timed channel lives in channel.hpp.
class DeliveryRules {
 public:
  explicit DeliveryRules(const PhysicalTopology& topo);

  /// Restricts the engine to interfaces whose addresses are already active
  /// (keys: device id, kind). Used while groups form one by one.
  DeliveryRules(const PhysicalTopology& topo,
                const std::vector<std::pair<int, IfaceKind>>& active);

  const PhysicalTopology& topology() const { return *topo_; }

  /// Interface a packet leaves through. Loopback when dst is one of the
  /// device's own addresses; broadcast prefers P2P; a device with both
  /// interfaces addressed unicasts through Wi-Fi (the higher-priority route
  /// entry). Throws NoRoute when no interface is addressed.
  Egress select_egress(int device, Ipv4 dst, bool broadcast) const;

  /// Unicast IP transfer verdict with the exact MAC hop list. Throws
  /// UnknownDestination when dst is assigned nowhere.
  DeliveryVerdict deliver_unicast(int sender, Ipv4 dst, int payload_size) const;

  /// Broadcast from a GO through its P2P interface: delivered to the group's
  /// members; bridge legacy clients receive the frame but discard at IP.
  /// Never propagates outside the group.
  DeliveryVerdict deliver_broadcast(int go, int payload_size) const;

  bool iface_active(int device, IfaceKind kind) const;
  /// Group whose BSS an interface belongs to; -1 when unassociated.
  int bss_of_iface(int device, IfaceKind kind) const;
  /// Looks an address up inside one BSS. Returns (device, kind) or nullopt.
  std::optional<std::pair<int, IfaceKind>> find_in_bss(int gid, Ipv4 ip) const;
  bool address_assigned_anywhere(Ipv4 ip) const;

 private:
  struct BssMember {
    int device;
    IfaceKind kind;
    Ipv4 ip;
    MacAddr mac;
  };

  const Interface& iface(int device, IfaceKind k) const;
  const BssMember* ap_of(int gid) const;

  const PhysicalTopology* topo_;
  std::vector<std::pair<bool, bool>> active_;      // per device: p2p, wifi
  std::map<int, std::vector<BssMember>> bss_;      // gid -> members (AP first)
};

}  // namespace ccrsim
