#include "ccrsim/backbone.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>

namespace ccrsim {

const char* to_string(Tunnel::Mode m) {
  switch (m) {
    case Tunnel::Mode::UnicastUp: return "unicast-up";
    case Tunnel::Mode::BroadcastDown: return "broadcast-down";
    case Tunnel::Mode::ReliableBidir: return "reliable-bidir";
  }
  return "?";
}

std::vector<int> eligible_relays(const PhysicalTopology& topo, int gid) {
  std::vector<int> out;
  for (int c : topo.group(gid).p2p_clients) {
    if (!topo.is_group_owner(c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int choose_relay(const PhysicalTopology& topo, int gid, std::uint64_t seed) {
  const Group& g = topo.group(gid);
  std::vector<int> eligible = eligible_relays(topo, gid);
  if (g.pinned_relay >= 0) {
    if (std::find(eligible.begin(), eligible.end(), g.pinned_relay) ==
        eligible.end()) {
      throw NoEligibleRelay("pinned relay of group " + std::to_string(gid) +
                            " is not an eligible P2P client");
    }
    return g.pinned_relay;
  }
  if (eligible.empty()) {
    throw NoEligibleRelay("group " + std::to_string(gid) +
                          " has no eligible relay client");
  }
  std::mt19937_64 rng(mix_seed(seed ^ (0x7e1a9ull + std::uint64_t(gid))));
  return eligible[rng() % eligible.size()];
}

RelayMap choose_relays(const PhysicalTopology& topo, std::uint64_t seed) {
  RelayMap relays;
  std::vector<int> gids;
  for (const auto& g : topo.groups()) gids.push_back(g.gid);
  std::sort(gids.begin(), gids.end());
  for (int gid : gids) {
    if (topo.group(gid).clients().empty()) continue;
    relays[gid] = choose_relay(topo, gid, seed);
  }
  return relays;
}

std::vector<Tunnel> build_tunnels(const PhysicalTopology& topo,
                                  const RelayMap& relays) {
  std::vector<Tunnel> out;
  std::vector<int> gids;
  for (const auto& g : topo.groups()) gids.push_back(g.gid);
  std::sort(gids.begin(), gids.end());
  for (int gid : gids) {
    const Group& g = topo.group(gid);
    for (int c : g.clients()) {
      IfaceKind ck = topo.iface_in_group(c, gid);
      out.push_back({g.owner, IfaceKind::P2P, c, ck,
                     Tunnel::Mode::BroadcastDown, gid});
      out.push_back({c, ck, g.owner, IfaceKind::P2P, Tunnel::Mode::UnicastUp,
                     gid});
    }
    std::vector<int> bridges;
    for (int c : g.legacy_clients) {
      if (topo.is_group_owner(c)) bridges.push_back(c);
    }
    std::sort(bridges.begin(), bridges.end());
    if (!bridges.empty()) {
      auto it = relays.find(gid);
      if (it == relays.end()) {
        throw NoEligibleRelay("group " + std::to_string(gid) +
                              " bridges another group but has no relay");
      }
      for (int b : bridges) {
        out.push_back({it->second, IfaceKind::P2P, b, IfaceKind::WiFi,
                       Tunnel::Mode::ReliableBidir, gid});
      }
    }
  }
  return out;
}

bool tunnel_connected(const PhysicalTopology& topo,
                      const std::vector<Tunnel>& tunnels, int from, int to) {
  std::set<int> seen{from};
  std::queue<int> frontier;
  frontier.push(from);
  while (!frontier.empty()) {
    int at = frontier.front();
    frontier.pop();
    if (at == to) return true;
    for (const Tunnel& t : tunnels) {
      int next = -1;
      if (t.from_device == at) next = t.to_device;
      if (t.mode == Tunnel::Mode::ReliableBidir && t.to_device == at) {
        next = t.from_device;
      }
      if (next >= 0 && seen.insert(next).second) frontier.push(next);
    }
  }
  return false;
}

}  // namespace ccrsim
