#include "ccrsim/routing.hpp"

#include <algorithm>

namespace ccrsim {

bool Pit::add(const ContentId& id, Ipv4 previous_hop, SimTime deadline) {
  auto [it, created] = entries_.try_emplace(id);
  Entry& e = it->second;
  if (created) {
    e.deadline = deadline;
  } else {
    e.deadline = std::max(e.deadline, deadline);
  }
  if (std::find(e.previous_hops.begin(), e.previous_hops.end(),
                previous_hop) == e.previous_hops.end()) {
    e.previous_hops.push_back(previous_hop);
  }
  return created;
}

std::vector<Ipv4> Pit::take(const ContentId& id) {
  auto it = entries_.find(id);
  if (it == entries_.end()) return {};
  std::vector<Ipv4> hops = std::move(it->second.previous_hops);
  entries_.erase(it);
  return hops;
}

std::size_t Pit::expire(SimTime now) {
  std::size_t n = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second.deadline <= now) {
      it = entries_.erase(it);
      ++n;
    } else {
      ++it;
    }
  }
  return n;
}

void ContentStore::put(const ContentId& id, std::string name,
                       std::vector<std::uint8_t> payload) {
  items_[id] = Item{std::move(name), std::move(payload)};
}

const std::vector<std::uint8_t>* ContentStore::payload(
    const ContentId& id) const {
  auto it = items_.find(id);
  return it == items_.end() ? nullptr : &it->second.payload;
}

const std::string* ContentStore::name(const ContentId& id) const {
  auto it = items_.find(id);
  return it == items_.end() ? nullptr : &it->second.name;
}

namespace {

NextHop hop_to(const PhysicalTopology& topo, int device, int gid) {
  NextHop h;
  h.device = device;
  h.iface = topo.iface_in_group(device, gid);
  auto ip = topo.device(device).iface(h.iface).ip;
  if (!ip) {
    throw NoRoute("next hop " + topo.device(device).label +
                  " has no address in group " + std::to_string(gid));
  }
  h.address = *ip;
  return h;
}

int relay_of(const RelayMap& relays, int gid) {
  auto it = relays.find(gid);
  if (it == relays.end()) {
    throw NoRoute("group " + std::to_string(gid) + " has no relay client");
  }
  return it->second;
}

}  // namespace

NextHop crt_next_hop(const PhysicalTopology& topo, const RelayMap& relays,
                     int device, int provider) {
  if (device == provider) {
    NextHop h;
    h.local = true;
    h.device = device;
    return h;
  }
  int home = topo.home_group(device);
  if (home < 0) {
    throw NoRoute(topo.device(device).label + " belongs to no group");
  }
  const Group& g = topo.group(home);
  bool device_is_go = g.owner == device;

  // Case 1: the provider is a member of the device's home group.
  if (g.owner == provider || g.has_client(provider)) {
    if (device_is_go && g.is_legacy_client(provider) &&
        topo.is_bridge(provider)) {
      // GO <-> bridge legacy client transfers are blocked both ways; the
      // relay client carries the traffic.
      return hop_to(topo, relay_of(relays, home), home);
    }
    return hop_to(topo, provider, home);
  }

  // Inter-group: walk the group tree toward the group nearest the provider.
  int target = topo.home_group(provider);
  if (target < 0) {
    throw NoRoute(topo.device(provider).label + " belongs to no group");
  }
  // A bridge provider is also reachable inside its parent group; head for
  // whichever of its groups is closer.
  if (topo.is_bridge(provider)) {
    int second = topo.client_group_of(provider)->gid;
    int d1 = topo.group_distance(home, target);
    int d2 = topo.group_distance(home, second);
    if (d2 >= 0 && (d1 < 0 || d2 < d1)) target = second;
  }
  if (topo.group_distance(home, target) < 0) {
    throw NoRoute("no backbone path from " + topo.device(device).label +
                  " to " + topo.device(provider).label);
  }

  int next_gid = topo.next_group_towards(home, target);
  if (topo.parent_group(next_gid) == home) {
    // Case 2: content lies through a child group.
    int bridge_go = topo.group(next_gid).owner;
    int rc = relay_of(relays, home);
    if (device == rc) {
      return hop_to(topo, bridge_go, home);  // the bridge's Wi-Fi address
    }
    return hop_to(topo, rc, home);
  }
  // Case 3: content lies through the parent group.
  if (device_is_go) {
    return hop_to(topo, relay_of(relays, next_gid), next_gid);
  }
  return hop_to(topo, g.owner, home);  // the GO's P2P address
}

std::vector<int> backbone_path(const PhysicalTopology& topo,
                               const RelayMap& relays, int src, int provider) {
  std::vector<int> path{src};
  std::size_t limit = 2 * topo.groups().size() + 2;
  int at = src;
  while (at != provider) {
    NextHop h = crt_next_hop(topo, relays, at, provider);
    at = h.device;
    path.push_back(at);
    if (path.size() > limit) {
      throw SimError("backbone path exceeds 2x group count; routing cycle");
    }
  }
  return path;
}

}  // namespace ccrsim
