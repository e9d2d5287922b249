#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "ccrsim/message.hpp"
#include "ccrsim/topology.hpp"

namespace ccrsim {

/// Per-group relay-client assignment (§III.C).
struct RelayAssignment {
  int gid = -1;
  int relay = -1;

  bool operator==(const RelayAssignment&) const = default;
};

using RelayMap = std::map<int, int>;  // gid -> relay device

/// Next hop toward a content provider: address plus the owning device and
/// interface, which disambiguates the two addresses of a bridge GO.
struct NextHop {
  Ipv4 address;
  int device = -1;
  IfaceKind iface = IfaceKind::P2P;
  bool local = false;  // the content is held by the querying device itself

  bool operator==(const NextHop&) const = default;
};

/// Content Routing Table: content id -> next hop, the "gateway" column of a
/// content-oriented routing table.
class Crt {
 public:
  void insert(const ContentId& id, NextHop hop) { entries_[id] = hop; }
  const NextHop* lookup(const ContentId& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }
  bool contains(const ContentId& id) const { return entries_.count(id) > 0; }
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<ContentId, NextHop>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<ContentId, NextHop> entries_;
};

/// Pending Interest Table: previous hops a request arrived from, so content
/// retraces the reverse path. Entries expire at their deadline.
class Pit {
 public:
  /// Appends a previous hop (idempotent per address) and extends the
  /// deadline. Returns true when this created the entry.
  bool add(const ContentId& id, Ipv4 previous_hop, SimTime deadline);
  /// Previous hops recorded for a content id (empty when no entry).
  std::vector<Ipv4> take(const ContentId& id);  // removes the entry
  bool contains(const ContentId& id) const { return entries_.count(id) > 0; }
  /// Drops entries whose deadline is <= now. Returns how many were removed.
  std::size_t expire(SimTime now);
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::vector<Ipv4> previous_hops;
    SimTime deadline;
  };
  std::unordered_map<ContentId, Entry> entries_;
};

/// Contents held by one providing device. Each content id is provided by
/// exactly one device per run.
class ContentStore {
 public:
  void put(const ContentId& id, std::string name,
           std::vector<std::uint8_t> payload);
  bool contains(const ContentId& id) const { return items_.count(id) > 0; }
  const std::vector<std::uint8_t>* payload(const ContentId& id) const;
  const std::string* name(const ContentId& id) const;

 private:
  struct Item {
    std::string name;
    std::vector<std::uint8_t> payload;
  };
  std::unordered_map<ContentId, Item> items_;
};

/// The §IV next-hop cases, evaluated with global knowledge. Given a device
/// and the provider holding the content, returns the CRT next hop the device
/// must use. The runtime advertisement protocol reproduces these entries
/// hop by hop; this function is the oracle form.
///
/// Case 1: provider in the device's group -> the provider's in-group address
/// (via the relay when the querying GO cannot unicast a bridge legacy
/// client). Case 2: content through a child group -> the relay client,
/// except the relay itself targets the child GO's Wi-Fi address. Case 3:
/// content through the parent group -> the GO's P2P address, except the GO
/// targets the parent group's relay.
///
/// Throws NoRoute when provider and device live in disconnected trees.
NextHop crt_next_hop(const PhysicalTopology& topo, const RelayMap& relays,
                     int device, int provider);

/// Chains crt_next_hop from `src` until the provider is reached (inclusive
/// of both endpoints). Bounded by 2 * group count; throws on cycles.
std::vector<int> backbone_path(const PhysicalTopology& topo,
                               const RelayMap& relays, int src, int provider);

}  // namespace ccrsim
