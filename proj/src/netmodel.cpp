#include "ccrsim/netmodel.hpp"

#include <algorithm>
#include <cmath>

namespace ccrsim {

const char* to_string(Egress e) {
  switch (e) {
    case Egress::P2P: return "p2p";
    case Egress::WiFi: return "wifi";
    case Egress::Loopback: return "loopback";
  }
  return "?";
}

const char* to_string(DeliveryVerdict::Outcome o) {
  using O = DeliveryVerdict::Outcome;
  switch (o) {
    case O::Delivered: return "delivered";
    case O::BlockedLoopback: return "blocked-loopback";
    case O::BlockedSourceConflict: return "blocked-source-conflict";
    case O::BlockedWrongEgress: return "blocked-wrong-egress";
    case O::LostOnChannel: return "lost-on-channel";
  }
  return "?";
}

SimTime frame_airtime(int size_bytes, bool broadcast,
                      const ChannelConfig& cfg) {
  double rate = broadcast ? cfg.broadcast_rate_mbps : cfg.unicast_rate_mbps;
  double bits = (size_bytes + cfg.per_frame_overhead_bytes) * 8.0;
  // bits / Mbit/s = microseconds; keep integer nanoseconds.
  return std::llround(bits * 1000.0 / rate) + cfg.per_frame_fixed_overhead;
}

DeliveryRules::DeliveryRules(const PhysicalTopology& topo) : topo_(&topo) {
  active_.assign(topo.devices().size(), {true, true});
  for (const auto& g : topo.groups()) {
    auto& members = bss_[g.gid];
    const Device& owner = topo.device(g.owner);
    if (owner.p2p.ip) {
      members.push_back({g.owner, IfaceKind::P2P, *owner.p2p.ip, owner.p2p.mac});
    }
    for (int c : g.clients()) {
      IfaceKind k = topo.iface_in_group(c, g.gid);
      const Interface& i = topo.device(c).iface(k);
      if (i.ip) members.push_back({c, k, *i.ip, i.mac});
    }
  }
}

DeliveryRules::DeliveryRules(
    const PhysicalTopology& topo,
    const std::vector<std::pair<int, IfaceKind>>& active)
    : DeliveryRules(topo) {
  active_.assign(topo.devices().size(), {false, false});
  for (auto [dev, kind] : active) {
    if (kind == IfaceKind::P2P) {
      active_[dev].first = true;
    } else {
      active_[dev].second = true;
    }
  }
  for (auto& [gid, members] : bss_) {
    std::erase_if(members, [this](const BssMember& m) {
      return !iface_active(m.device, m.kind);
    });
  }
}

bool DeliveryRules::iface_active(int device, IfaceKind kind) const {
  const auto& flags = active_.at(device);
  if (!(kind == IfaceKind::P2P ? flags.first : flags.second)) return false;
  return topo_->device(device).iface(kind).ip.has_value();
}

const Interface& DeliveryRules::iface(int device, IfaceKind k) const {
  return topo_->device(device).iface(k);
}

int DeliveryRules::bss_of_iface(int device, IfaceKind kind) const {
  for (const auto& [gid, members] : bss_) {
    for (const auto& m : members) {
      if (m.device == device && m.kind == kind) return gid;
    }
  }
  return -1;
}

std::optional<std::pair<int, IfaceKind>> DeliveryRules::find_in_bss(
    int gid, Ipv4 ip) const {
  auto it = bss_.find(gid);
  if (it == bss_.end()) return std::nullopt;
  for (const auto& m : it->second) {
    if (m.ip == ip) return std::make_pair(m.device, m.kind);
  }
  return std::nullopt;
}

bool DeliveryRules::address_assigned_anywhere(Ipv4 ip) const {
  for (const auto& [gid, members] : bss_) {
    for (const auto& m : members) {
      if (m.ip == ip) return true;
    }
  }
  return false;
}

const DeliveryRules::BssMember* DeliveryRules::ap_of(int gid) const {
  auto it = bss_.find(gid);
  if (it == bss_.end()) return nullptr;
  int owner = topo_->group(gid).owner;
  for (const auto& m : it->second) {
    if (m.device == owner && m.kind == IfaceKind::P2P) return &m;
  }
  return nullptr;
}

Egress DeliveryRules::select_egress(int device, Ipv4 dst,
                                    bool broadcast) const {
  bool p2p = iface_active(device, IfaceKind::P2P);
  bool wifi = iface_active(device, IfaceKind::WiFi);
  if (!p2p && !wifi) {
    throw NoRoute(topo_->device(device).label + " has no addressed interface");
  }
  if (!broadcast) {
    if ((p2p && *iface(device, IfaceKind::P2P).ip == dst) ||
        (wifi && *iface(device, IfaceKind::WiFi).ip == dst)) {
      return Egress::Loopback;
    }
  }
  if (broadcast) {
    return p2p ? Egress::P2P : Egress::WiFi;
  }
  // The Wi-Fi route entry outranks the P2P one when both exist (§III.B).
  if (p2p && wifi) return Egress::WiFi;
  return p2p ? Egress::P2P : Egress::WiFi;
}

DeliveryVerdict DeliveryRules::deliver_unicast(int sender, Ipv4 dst,
                                               int payload_size) const {
  DeliveryVerdict v;
  Egress egress = select_egress(sender, dst, false);
  if (egress == Egress::Loopback) {
    v.outcome = DeliveryVerdict::Outcome::BlockedLoopback;
    return v;
  }
  IfaceKind out_kind = egress == Egress::P2P ? IfaceKind::P2P : IfaceKind::WiFi;
  const Interface& out = iface(sender, out_kind);
  int gid = bss_of_iface(sender, out_kind);
  if (gid < 0) {
    throw NoRoute(topo_->device(sender).label +
                  " egress interface is not associated to any group");
  }

  auto target = find_in_bss(gid, dst);
  if (!target) {
    if (!address_assigned_anywhere(dst)) {
      throw UnknownDestination("address " + dst.str() +
                               " is not assigned to any interface");
    }
    // Assigned somewhere, but not reachable from the selected egress: the
    // bridge-GO-to-own-client case and its relatives.
    v.outcome = DeliveryVerdict::Outcome::BlockedWrongEgress;
    return v;
  }

  auto [dst_dev, dst_kind] = *target;
  const Interface& in = iface(dst_dev, dst_kind);
  const BssMember* ap = ap_of(gid);
  if (!ap) {
    throw NoRoute("group " + std::to_string(gid) + " has no active GO");
  }

  auto push_hop = [&](int tx_dev, MacAddr ta, int rx_dev, MacAddr ra) {
    MacFrame f;
    f.ta = ta;
    f.ra = ra;
    f.sa = out.mac;
    f.da = in.mac;
    f.tx_device = tx_dev;
    f.rx_device = rx_dev;
    f.src_ip = *out.ip;
    f.dst_ip = dst;
    f.size = payload_size;
    f.broadcast = false;
    v.mac_hops.push_back(f);
  };

  if (sender == ap->device && out_kind == IfaceKind::P2P) {
    push_hop(sender, out.mac, dst_dev, in.mac);  // AP straight to station
  } else if (dst_dev == ap->device && dst_kind == IfaceKind::P2P) {
    push_hop(sender, out.mac, dst_dev, in.mac);  // station up to the AP
  } else {
    // Station to station: the GO relays at MAC layer (two hops, sa/da kept).
    push_hop(sender, out.mac, ap->device, ap->mac);
    push_hop(ap->device, ap->mac, dst_dev, in.mac);
  }

  if (topo_->device(dst_dev).owns_address(*out.ip)) {
    // Receiver's IP layer sees its own address as the packet source.
    v.outcome = DeliveryVerdict::Outcome::BlockedSourceConflict;
    v.conflict_device = dst_dev;
    return v;
  }
  v.outcome = DeliveryVerdict::Outcome::Delivered;
  v.receivers.push_back(dst_dev);
  return v;
}

DeliveryVerdict DeliveryRules::deliver_broadcast(int go,
                                                 int payload_size) const {
  const Group* owned = topo_->group_of_owner(go);
  if (!owned || !iface_active(go, IfaceKind::P2P)) {
    throw NoRoute(topo_->device(go).label +
                  " is not a GO with an addressed P2P interface");
  }
  const Interface& out = iface(go, IfaceKind::P2P);

  DeliveryVerdict v;
  MacFrame f;
  f.ta = out.mac;
  f.ra = kBroadcastMac;
  f.sa = out.mac;
  f.da = kBroadcastMac;
  f.tx_device = go;
  f.rx_device = -1;
  f.src_ip = *out.ip;
  f.dst_ip = kBroadcastAddress;
  f.size = payload_size;
  f.broadcast = true;
  v.mac_hops.push_back(f);

  auto it = bss_.find(owned->gid);
  if (it != bss_.end()) {
    std::vector<const BssMember*> members;
    for (const auto& m : it->second) {
      if (m.device != go) members.push_back(&m);
    }
    std::sort(members.begin(), members.end(),
              [](const BssMember* a, const BssMember* b) {
                return a->device < b->device;
              });
    for (const BssMember* m : members) {
      if (topo_->device(m->device).owns_address(*out.ip)) {
        v.source_conflict_discards.push_back(m->device);
      } else {
        v.receivers.push_back(m->device);
      }
    }
  }
  v.outcome = DeliveryVerdict::Outcome::Delivered;
  return v;
}

}  // namespace ccrsim
