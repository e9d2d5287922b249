#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace ccrsim {

/// Simulated time in integer nanoseconds. Integer arithmetic keeps event
/// ordering and trace output bit-stable across runs.
using SimTime = std::int64_t;

constexpr SimTime kNoTime = -1;

constexpr SimTime nanoseconds(std::int64_t n) { return n; }
constexpr SimTime microseconds(std::int64_t us) { return us * 1000; }
constexpr SimTime milliseconds(std::int64_t ms) { return ms * 1000000; }
constexpr SimTime seconds(std::int64_t s) { return s * 1000000000; }

inline double to_seconds(SimTime t) { return static_cast<double>(t) * 1e-9; }

std::string format_time(SimTime t);  // seconds with 9 decimals

/// IPv4 address, host byte order. All simulated addresses live in
/// 192.168.49.0/24, mirroring the Android Wi-Fi Direct DHCP plan.
struct Ipv4 {
  std::uint32_t value = 0;

  constexpr Ipv4() = default;
  constexpr explicit Ipv4(std::uint32_t v) : value(v) {}
  constexpr Ipv4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
      : value((std::uint32_t(a) << 24) | (std::uint32_t(b) << 16) |
              (std::uint32_t(c) << 8) | std::uint32_t(d)) {}

  constexpr bool operator==(const Ipv4&) const = default;
  constexpr auto operator<=>(const Ipv4&) const = default;

  constexpr std::uint8_t last_octet() const {
    return static_cast<std::uint8_t>(value & 0xff);
  }
  constexpr bool is_set() const { return value != 0; }

  std::string str() const;
  static Ipv4 parse(const std::string& text);  // throws std::invalid_argument
};

/// The subnet every Wi-Fi Direct group uses (the source of the GO address
/// conflicts the whole design works around).
constexpr Ipv4 kSubnetBase{192, 168, 49, 0};
constexpr Ipv4 kGoAddress{192, 168, 49, 1};
constexpr Ipv4 kBroadcastAddress{192, 168, 49, 255};

constexpr bool in_subnet(Ipv4 ip) {
  return (ip.value & 0xffffff00u) == kSubnetBase.value;
}

/// 48-bit MAC identifier stored in the low bits of a u64.
struct MacAddr {
  std::uint64_t value = 0;

  constexpr MacAddr() = default;
  constexpr explicit MacAddr(std::uint64_t v) : value(v & 0xffffffffffffull) {}

  constexpr bool operator==(const MacAddr&) const = default;
  constexpr auto operator<=>(const MacAddr&) const = default;

  constexpr bool is_broadcast() const { return value == 0xffffffffffffull; }

  std::string str() const;
};

constexpr MacAddr kBroadcastMac{0xffffffffffffull};

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRoute : public SimError {
 public:
  using SimError::SimError;
};

class UnknownDestination : public SimError {
 public:
  using SimError::SimError;
};

class NoEligibleRelay : public SimError {
 public:
  using SimError::SimError;
};

class MalformedMessage : public SimError {
 public:
  using SimError::SimError;
};

class ConfigError : public SimError {
 public:
  using SimError::SimError;
};

/// splitmix64 step; used to derive independent RNG seeds from one run seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace ccrsim

template <>
struct std::hash<ccrsim::Ipv4> {
  std::size_t operator()(const ccrsim::Ipv4& ip) const noexcept {
    return std::hash<std::uint32_t>{}(ip.value);
  }
};
