#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccrsim/net.hpp"

namespace ccrsim {

enum class IfaceKind { P2P, WiFi };

const char* to_string(IfaceKind k);

/// One of the two MAC entities of a device. `ip` is set exactly when the
/// interface is associated to a group.
struct Interface {
  IfaceKind kind = IfaceKind::P2P;
  MacAddr mac;
  std::optional<Ipv4> ip;
};

struct Device {
  int id = -1;
  std::string label;
  Interface p2p;
  Interface wifi;

  const Interface& iface(IfaceKind k) const {
    return k == IfaceKind::P2P ? p2p : wifi;
  }
  Interface& iface(IfaceKind k) { return k == IfaceKind::P2P ? p2p : wifi; }
  bool owns_address(Ipv4 a) const {
    return (p2p.ip && *p2p.ip == a) || (wifi.ip && *wifi.ip == a);
  }
};

enum class Role { GroupOwner, P2PClient, LegacyClient };

const char* to_string(Role r);

/// A Wi-Fi Direct group: one GO plus its associated stations. P2P clients
/// attach with their P2P interface, legacy clients with their Wi-Fi one.
struct Group {
  int gid = -1;
  int owner = -1;
  std::vector<int> p2p_clients;
  std::vector<int> legacy_clients;
  /// Explicitly pinned relay client (optional; elections pick one otherwise).
  int pinned_relay = -1;

  bool has_client(int device) const;
  bool is_p2p_client(int device) const;
  bool is_legacy_client(int device) const;
  std::vector<int> clients() const;  // p2p then legacy, each ascending id
};

/// Android role-constraint check result. `rule` identifies the violated
/// constraint from the paper's infeasible-scenario list.
struct ValidationResult {
  enum class Rule {
    Ok,
    P2PClientAndGroupOwner,  // (a)
    OwnerOfTwoGroups,        // (b)
    ClientInTwoGroups,       // (c)
    Structural,              // dangling refs, duplicate ids/labels, cycles
  };
  Rule rule = Rule::Ok;
  int device = -1;
  std::string message;

  bool ok() const { return rule == Rule::Ok; }
  static ValidationResult success() { return {}; }
};

const char* to_string(ValidationResult::Rule r);

/// (child group, parent group, bridge device): one entry per GO that is a
/// legacy client in another group.
struct BridgeLink {
  int child_gid = -1;
  int parent_gid = -1;
  int bridge_device = -1;

  bool operator==(const BridgeLink&) const = default;
};

/// Devices, interfaces and groups of a multi-group network. Immutable once
/// addressed; safe to share read-only across threads.
class PhysicalTopology {
 public:
  PhysicalTopology() = default;

  int add_device(const std::string& label);
  void add_group(Group g);  // throws ConfigError on duplicate gid

  const std::vector<Device>& devices() const { return devices_; }
  const std::vector<Group>& groups() const { return groups_; }
  Device& device(int id);
  const Device& device(int id) const;
  const Group& group(int gid) const;
  Group& group_mut(int gid);

  int find_device(const std::string& label) const;  // -1 when absent
  const Group* group_of_owner(int device) const;    // group this device owns
  /// Group where this device is a client (P2P or legacy), or nullptr.
  const Group* client_group_of(int device) const;
  Role role_in_group(int device, int gid) const;  // throws if not a member

  bool is_group_owner(int device) const { return group_of_owner(device); }
  /// A GO that is also a legacy client elsewhere.
  bool is_bridge(int device) const;
  /// Home group for routing purposes: owned group for GOs, client group
  /// otherwise. -1 for devices outside every group.
  int home_group(int device) const;
  /// Interface a device uses inside a given group.
  IfaceKind iface_in_group(int device, int gid) const;
  /// Address of `device` as seen inside `gid` (unset if unaddressed).
  std::optional<Ipv4> address_in_group(int device, int gid) const;

  /// gid of the parent group (the one whose GO list contains this group's
  /// owner as legacy client), or -1 for root groups.
  int parent_group(int gid) const;
  /// Distance from the root of this group's tree.
  int group_depth(int gid) const;
  /// Undirected tree distance between two groups; -1 if disconnected.
  int group_distance(int from_gid, int to_gid) const;
  /// First group on the tree path from->to (equals `to_gid` for neighbors).
  int next_group_towards(int from_gid, int to_gid) const;

  bool addressed() const { return addressed_; }

  friend ValidationResult validate_roles(const PhysicalTopology& topo);
  friend PhysicalTopology assign_addresses(PhysicalTopology topo,
                                           std::uint64_t seed);

 private:
  std::vector<Device> devices_;
  std::vector<Group> groups_;
  std::map<int, std::size_t> group_index_;
  bool addressed_ = false;
};

/// Checks the Android role constraints of §III plus structural sanity
/// (existing device references, one GO per group, acyclic group graph).
/// Returns the first violated constraint in (device id, rule) order.
ValidationResult validate_roles(const PhysicalTopology& topo);

/// DHCP outcome: every GO P2P interface gets 192.168.49.1/24, every client
/// interface a distinct x in [2,254] drawn globally without replacement,
/// deterministically from `seed`. Interfaces keep explicitly configured
/// addresses. Throws ConfigError (GroupTooLarge / pool exhausted / explicit
/// address conflicts) and requires a validated topology.
PhysicalTopology assign_addresses(PhysicalTopology topo, std::uint64_t seed);

/// One entry per GO acting as legacy client elsewhere, ordered by child gid.
std::vector<BridgeLink> bridge_links(const PhysicalTopology& topo);

/// Loads the .toposim text format (see README for the schema). Throws
/// ConfigError with a line number on any problem.
PhysicalTopology load_topology(std::istream& in);
PhysicalTopology load_topology_file(const std::string& path);

}  // namespace ccrsim
