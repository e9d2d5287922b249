#include "ccrsim/topology.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace ccrsim {

const char* to_string(IfaceKind k) {
  return k == IfaceKind::P2P ? "p2p" : "wifi";
}

const char* to_string(Role r) {
  switch (r) {
    case Role::GroupOwner: return "group-owner";
    case Role::P2PClient: return "p2p-client";
    case Role::LegacyClient: return "legacy-client";
  }
  return "?";
}

const char* to_string(ValidationResult::Rule r) {
  using Rule = ValidationResult::Rule;
  switch (r) {
    case Rule::Ok: return "ok";
    case Rule::P2PClientAndGroupOwner: return "rule-a";
    case Rule::OwnerOfTwoGroups: return "rule-b";
    case Rule::ClientInTwoGroups: return "rule-c";
    case Rule::Structural: return "structural";
  }
  return "?";
}

bool Group::has_client(int device) const {
  return is_p2p_client(device) || is_legacy_client(device);
}

bool Group::is_p2p_client(int device) const {
  return std::find(p2p_clients.begin(), p2p_clients.end(), device) !=
         p2p_clients.end();
}

bool Group::is_legacy_client(int device) const {
  return std::find(legacy_clients.begin(), legacy_clients.end(), device) !=
         legacy_clients.end();
}

std::vector<int> Group::clients() const {
  std::vector<int> out = p2p_clients;
  std::sort(out.begin(), out.end());
  std::vector<int> legacy = legacy_clients;
  std::sort(legacy.begin(), legacy.end());
  out.insert(out.end(), legacy.begin(), legacy.end());
  return out;
}

int PhysicalTopology::add_device(const std::string& label) {
  if (find_device(label) >= 0) {
    throw ConfigError("duplicate device label: " + label);
  }
  Device d;
  d.id = static_cast<int>(devices_.size());
  d.label = label;
  // Synthetic locally-administered MACs, unique per interface.
  d.p2p.kind = IfaceKind::P2P;
  d.p2p.mac = MacAddr(0x020000000000ull | (std::uint64_t(d.id) << 8) | 1);
  d.wifi.kind = IfaceKind::WiFi;
  d.wifi.mac = MacAddr(0x020000000000ull | (std::uint64_t(d.id) << 8) | 2);
  devices_.push_back(std::move(d));
  return devices_.back().id;
}

void PhysicalTopology::add_group(Group g) {
  if (group_index_.count(g.gid)) {
    throw ConfigError("duplicate group id " + std::to_string(g.gid));
  }
  group_index_[g.gid] = groups_.size();
  groups_.push_back(std::move(g));
}

Device& PhysicalTopology::device(int id) {
  if (id < 0 || id >= static_cast<int>(devices_.size())) {
    throw ConfigError("no such device id " + std::to_string(id));
  }
  return devices_[id];
}

const Device& PhysicalTopology::device(int id) const {
  return const_cast<PhysicalTopology*>(this)->device(id);
}

const Group& PhysicalTopology::group(int gid) const {
  auto it = group_index_.find(gid);
  if (it == group_index_.end()) {
    throw ConfigError("no such group " + std::to_string(gid));
  }
  return groups_[it->second];
}

Group& PhysicalTopology::group_mut(int gid) {
  return const_cast<Group&>(group(gid));
}

int PhysicalTopology::find_device(const std::string& label) const {
  for (const auto& d : devices_) {
    if (d.label == label) return d.id;
  }
  return -1;
}

const Group* PhysicalTopology::group_of_owner(int device) const {
  for (const auto& g : groups_) {
    if (g.owner == device) return &g;
  }
  return nullptr;
}

const Group* PhysicalTopology::client_group_of(int device) const {
  for (const auto& g : groups_) {
    if (g.has_client(device)) return &g;
  }
  return nullptr;
}

Role PhysicalTopology::role_in_group(int device, int gid) const {
  const Group& g = group(gid);
  if (g.owner == device) return Role::GroupOwner;
  if (g.is_p2p_client(device)) return Role::P2PClient;
  if (g.is_legacy_client(device)) return Role::LegacyClient;
  throw ConfigError(this->device(device).label + " is not a member of group " +
                    std::to_string(gid));
}

bool PhysicalTopology::is_bridge(int device) const {
  if (!group_of_owner(device)) return false;
  const Group* cg = client_group_of(device);
  return cg && cg->is_legacy_client(device);
}

int PhysicalTopology::home_group(int device) const {
  if (const Group* g = group_of_owner(device)) return g->gid;
  if (const Group* g = client_group_of(device)) return g->gid;
  return -1;
}

IfaceKind PhysicalTopology::iface_in_group(int device, int gid) const {
  switch (role_in_group(device, gid)) {
    case Role::GroupOwner:
    case Role::P2PClient: return IfaceKind::P2P;
    case Role::LegacyClient: return IfaceKind::WiFi;
  }
  return IfaceKind::P2P;
}

std::optional<Ipv4> PhysicalTopology::address_in_group(int dev, int gid) const {
  return device(dev).iface(iface_in_group(dev, gid)).ip;
}

int PhysicalTopology::parent_group(int gid) const {
  int owner = group(gid).owner;
  for (const auto& g : groups_) {
    if (g.gid != gid && g.is_legacy_client(owner)) return g.gid;
  }
  return -1;
}

int PhysicalTopology::group_depth(int gid) const {
  int depth = 0;
  for (int p = parent_group(gid); p >= 0; p = parent_group(p)) {
    ++depth;
    if (depth > static_cast<int>(groups_.size())) {
      throw ConfigError("group graph contains a cycle");
    }
  }
  return depth;
}

namespace {
std::vector<int> path_to_root(const PhysicalTopology& t, int gid) {
  std::vector<int> path{gid};
  for (int p = t.parent_group(gid); p >= 0; p = t.parent_group(p)) {
    path.push_back(p);
    if (path.size() > t.groups().size() + 1) {
      throw ConfigError("group graph contains a cycle");
    }
  }
  return path;
}
}  // namespace

int PhysicalTopology::group_distance(int from_gid, int to_gid) const {
  if (from_gid == to_gid) return 0;
  auto a = path_to_root(*this, from_gid);
  auto b = path_to_root(*this, to_gid);
  if (a.back() != b.back()) return -1;  // different trees
  // Strip the common suffix; what remains meets at the lowest common ancestor.
  while (a.size() > 1 && b.size() > 1 && a[a.size() - 2] == b[b.size() - 2]) {
    a.pop_back();
    b.pop_back();
  }
  return static_cast<int>(a.size() - 1 + b.size() - 1);
}

int PhysicalTopology::next_group_towards(int from_gid, int to_gid) const {
  if (from_gid == to_gid) return from_gid;
  auto b = path_to_root(*this, to_gid);
  // If from lies on to's root path, step down toward `to`.
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == from_gid) {
      return b[i - 1];  // i > 0 since from != to
    }
  }
  // Otherwise the path goes up through from's parent.
  int p = parent_group(from_gid);
  if (p < 0 || group_distance(from_gid, to_gid) < 0) {
    throw ConfigError("groups are not connected");
  }
  return p;
}

ValidationResult validate_roles(const PhysicalTopology& topo) {
  auto structural = [](std::string msg) {
    ValidationResult r;
    r.rule = ValidationResult::Rule::Structural;
    r.message = std::move(msg);
    return r;
  };

  int n = static_cast<int>(topo.devices_.size());
  std::set<std::uint64_t> macs;
  for (const auto& d : topo.devices_) {
    if (!macs.insert(d.p2p.mac.value).second ||
        !macs.insert(d.wifi.mac.value).second) {
      return structural("duplicate MAC on device " + d.label);
    }
  }
  for (const auto& g : topo.groups_) {
    if (g.owner < 0 || g.owner >= n) {
      return structural("group " + std::to_string(g.gid) +
                        " references a missing owner");
    }
    for (int c : g.p2p_clients) {
      if (c < 0 || c >= n)
        return structural("group " + std::to_string(g.gid) +
                          " references a missing p2p client");
      if (c == g.owner)
        return structural("owner of group " + std::to_string(g.gid) +
                          " listed as its own client");
    }
    for (int c : g.legacy_clients) {
      if (c < 0 || c >= n)
        return structural("group " + std::to_string(g.gid) +
                          " references a missing legacy client");
      if (c == g.owner)
        return structural("owner of group " + std::to_string(g.gid) +
                          " listed as its own client");
      if (g.is_p2p_client(c))
        return structural(topo.devices_[c].label + " is both p2p and legacy " +
                          "client of group " + std::to_string(g.gid));
    }
    if (g.pinned_relay >= 0 && !g.is_p2p_client(g.pinned_relay)) {
      return structural("pinned relay of group " + std::to_string(g.gid) +
                        " is not a p2p client of it");
    }
  }

  // The Android-infeasible role combinations, first violation in device
  // order, rules (a) -> (b) -> (c).
  for (const auto& d : topo.devices_) {
    int owned = 0, member = 0, p2p = 0;
    for (const auto& g : topo.groups_) {
      if (g.owner == d.id) ++owned;
      if (g.is_p2p_client(d.id)) ++p2p, ++member;
      if (g.is_legacy_client(d.id)) ++member;
    }
    ValidationResult r;
    r.device = d.id;
    if (owned >= 1 && p2p >= 1) {
      r.rule = ValidationResult::Rule::P2PClientAndGroupOwner;
      r.message = d.label + " is a P2P client in one group and GO in another";
      return r;
    }
    if (owned >= 2) {
      r.rule = ValidationResult::Rule::OwnerOfTwoGroups;
      r.message = d.label + " behaves as the GO of two or more groups";
      return r;
    }
    if (member >= 2) {
      r.rule = ValidationResult::Rule::ClientInTwoGroups;
      r.message = d.label + " behaves as client in two or more groups";
      return r;
    }
  }

  // The group-adjacency graph must be a tree or forest (the backbone design
  // assumes it; cyclic physical configurations are rejected here).
  for (const auto& g : topo.groups_) {
    std::set<int> seen{g.gid};
    int p = topo.parent_group(g.gid);
    while (p >= 0) {
      if (!seen.insert(p).second) {
        return structural("group adjacency graph contains a cycle through " +
                          std::to_string(g.gid));
      }
      p = topo.parent_group(p);
    }
  }
  return ValidationResult::success();
}

PhysicalTopology assign_addresses(PhysicalTopology topo, std::uint64_t seed) {
  ValidationResult v = validate_roles(topo);
  if (!v.ok()) {
    throw ConfigError("cannot address an invalid topology: " + v.message);
  }

  std::set<std::uint8_t> taken;  // client octets, global (cross-group unique)
  // Honor explicit client addresses before drawing the rest.
  for (const auto& g : topo.groups_) {
    for (int c : g.clients()) {
      const Interface& iface =
          topo.device(c).iface(topo.iface_in_group(c, g.gid));
      if (!iface.ip) continue;
      if (!in_subnet(*iface.ip) || iface.ip->last_octet() < 2 ||
          iface.ip->last_octet() > 254) {
        throw ConfigError("explicit address " + iface.ip->str() + " on " +
                          topo.device(c).label + " outside 192.168.49.[2,254]");
      }
      if (!taken.insert(iface.ip->last_octet()).second) {
        throw ConfigError("explicit address " + iface.ip->str() +
                          " assigned twice");
      }
    }
  }

  // Fisher-Yates over the pool with bounded draws from mt19937_64: the
  // standard fixes the engine's output, so the shuffle is portable
  // (uniform_int_distribution would not be).
  std::vector<std::uint8_t> pool;
  for (int x = 2; x <= 254; ++x) pool.push_back(static_cast<std::uint8_t>(x));
  std::mt19937_64 rng(seed);
  auto bounded = [&rng](std::uint64_t n) {  // rejection sampling, unbiased
    std::uint64_t limit = ~0ull - (~0ull % n + 1) % n;
    std::uint64_t x;
    do {
      x = rng();
    } while (x > limit);
    return x % n;
  };
  for (std::size_t i = pool.size() - 1; i > 0; --i) {
    std::swap(pool[i], pool[bounded(i + 1)]);
  }
  std::size_t next = 0;
  auto draw = [&]() {
    while (next < pool.size() && taken.count(pool[next])) ++next;
    if (next >= pool.size()) {
      throw ConfigError("address pool exhausted (more than 253 clients)");
    }
    std::uint8_t x = pool[next++];
    taken.insert(x);
    return x;
  };

  std::vector<int> gids;
  for (const auto& g : topo.groups_) gids.push_back(g.gid);
  std::sort(gids.begin(), gids.end());
  for (int gid : gids) {
    const Group& g = topo.group(gid);
    if (g.clients().size() > 253) {
      throw ConfigError("GroupTooLarge: group " + std::to_string(gid) +
                        " needs more than 253 client addresses");
    }
    topo.device(g.owner).p2p.ip = kGoAddress;
    for (int c : g.clients()) {
      Interface& iface = topo.device(c).iface(topo.iface_in_group(c, gid));
      if (!iface.ip) {
        iface.ip = Ipv4(192, 168, 49, draw());
      }
    }
  }
  topo.addressed_ = true;
  return topo;
}

std::vector<BridgeLink> bridge_links(const PhysicalTopology& topo) {
  std::vector<BridgeLink> out;
  for (const auto& g : topo.groups()) {
    int parent = topo.parent_group(g.gid);
    if (parent >= 0) {
      out.push_back({g.gid, parent, g.owner});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.child_gid < b.child_gid;
  });
  return out;
}

namespace {

// Splits a config line into tokens; double quotes group tokens with spaces.
std::vector<std::string> tokenize(const std::string& line, int lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, have = false;
  for (char ch : line) {
    if (quoted) {
      if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      have = true;
    } else if (ch == '#') {
      break;
    } else if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (have) out.push_back(cur);
      cur.clear();
      have = false;
    } else {
      cur += ch;
      have = true;
    }
  }
  if (quoted) {
    throw ConfigError("line " + std::to_string(lineno) + ": unclosed quote");
  }
  if (have) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, int lineno) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(lineno) + ": bad integer '" +
                      s + "'");
  }
}

}  // namespace

PhysicalTopology load_topology(std::istream& in) {
  PhysicalTopology topo;
  struct PendingAddr {
    std::string label;
    IfaceKind kind;
    Ipv4 ip;
    int lineno;
  };
  struct PendingRelay {
    int gid;
    std::string label;
    int lineno;
  };
  std::vector<PendingAddr> addrs;
  std::vector<PendingRelay> relays;

  auto device_of = [&](const std::string& label, int lineno) {
    int id = topo.find_device(label);
    if (id < 0) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": unknown device '" + label + "'");
    }
    return id;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line, lineno);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "device") {
      if (tok.size() != 2) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'device <label>'");
      }
      topo.add_device(tok[1]);
    } else if (kw == "group") {
      if (tok.size() < 4 || tok[2] != "owner") {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'group <gid> owner <label> "
                          "[p2p <labels...>] [legacy <labels...>]'");
      }
      Group g;
      g.gid = parse_int(tok[1], lineno);
      g.owner = device_of(tok[3], lineno);
      enum { None, P2P, Legacy } section = None;
      for (std::size_t i = 4; i < tok.size(); ++i) {
        if (tok[i] == "p2p") {
          section = P2P;
        } else if (tok[i] == "legacy") {
          section = Legacy;
        } else if (section == P2P) {
          g.p2p_clients.push_back(device_of(tok[i], lineno));
        } else if (section == Legacy) {
          g.legacy_clients.push_back(device_of(tok[i], lineno));
        } else {
          throw ConfigError("line " + std::to_string(lineno) +
                            ": unexpected token '" + tok[i] + "'");
        }
      }
      topo.add_group(std::move(g));
    } else if (kw == "address") {
      if (tok.size() != 4 || (tok[2] != "p2p" && tok[2] != "wifi")) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'address <device> p2p|wifi <ipv4>'");
      }
      try {
        addrs.push_back({tok[1],
                         tok[2] == "p2p" ? IfaceKind::P2P : IfaceKind::WiFi,
                         Ipv4::parse(tok[3]), lineno});
      } catch (const std::invalid_argument& e) {
        throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
      }
    } else if (kw == "relay") {
      if (tok.size() != 3) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": expected 'relay <gid> <device>'");
      }
      relays.push_back({parse_int(tok[1], lineno), tok[2], lineno});
    } else {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": unknown directive '" + kw + "'");
    }
  }

  for (const auto& a : addrs) {
    topo.device(device_of(a.label, a.lineno)).iface(a.kind).ip = a.ip;
  }
  for (const auto& r : relays) {
    try {
      topo.group_mut(r.gid).pinned_relay = device_of(r.label, r.lineno);
    } catch (const ConfigError&) {
      throw ConfigError("line " + std::to_string(r.lineno) +
                        ": unknown group " + std::to_string(r.gid));
    }
  }
  return topo;
}

PhysicalTopology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  return load_topology(in);
}

}  // namespace ccrsim
