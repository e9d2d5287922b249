#pragma once

#include <vector>

#include "ccrsim/routing.hpp"
#include "ccrsim/topology.hpp"

namespace ccrsim {

/// A directed transport-layer edge of the logical backbone.
struct Tunnel {
  enum class Mode {
    UnicastUp,      // client -> its GO, unicast IP
    BroadcastDown,  // GO -> one of its clients, broadcast IP
    ReliableBidir,  // relay client <-> bridge legacy client, stream-like
  };

  int from_device = -1;
  IfaceKind from_iface = IfaceKind::P2P;
  int to_device = -1;
  IfaceKind to_iface = IfaceKind::P2P;
  Mode mode = Mode::UnicastUp;
  int gid = -1;

  bool operator==(const Tunnel&) const = default;
};

const char* to_string(Tunnel::Mode m);

/// Clients a GO may elect as relay: P2P clients of the group that do not act
/// as GO in another group, ascending device id.
std::vector<int> eligible_relays(const PhysicalTopology& topo, int gid);

/// Seeded uniform pick among the eligible clients (or the pinned relay when
/// the group has one). Throws NoEligibleRelay when no candidate exists.
int choose_relay(const PhysicalTopology& topo, int gid, std::uint64_t seed);

/// Relay choices for every group with at least one client.
/// Groups without clients get no relay.
RelayMap choose_relays(const PhysicalTopology& topo, std::uint64_t seed);

/// §III.D tunnel set: per group a BroadcastDown edge GO->client and a
/// UnicastUp edge client->GO for every client, plus a ReliableBidir edge
/// between the relay client and each bridge legacy client. Requires a relay
/// for every group that has bridge legacy clients.
std::vector<Tunnel> build_tunnels(const PhysicalTopology& topo,
                                  const RelayMap& relays);

/// True when some tunnel sequence connects `from` to `to` (directed edges;
/// ReliableBidir counts both ways).
bool tunnel_connected(const PhysicalTopology& topo,
                      const std::vector<Tunnel>& tunnels, int from, int to);

}  // namespace ccrsim
