#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccrsim/net.hpp"

namespace ccrsim {

/// 16-byte content identifier: the MD5 digest of the content name.
struct ContentId {
  std::array<std::uint8_t, 16> bytes{};

  bool operator==(const ContentId&) const = default;
  auto operator<=>(const ContentId&) const = default;

  std::string hex() const;
  static ContentId from_name(const std::string& name);
  static ContentId from_hex(const std::string& hex);  // throws on bad input
};

enum class MsgType : std::uint8_t {
  ContentRegistration = 1,
  ContentRegistrationAck = 2,
  ContentAdvertisement = 3,
  ContentAdvertisementAck = 4,
  ContentData = 5,
  ContentRequest = 6,
  RelayElection = 7,
  RelayElectionAck = 8,
  GoRoleNotify = 9,
  GoRoleNotifyAck = 10,
  RouteFailureNotify = 11,
};

const char* to_string(MsgType t);
bool is_ack(MsgType t);
/// Ack type answering a given request type; throws for types with no ack.
MsgType ack_for(MsgType t);

constexpr std::size_t kHeaderSize = 21;  // type(1) + msg id(4) + content id(16)
constexpr std::size_t kMaxPayload = 65535;

/// The single application-layer message of the protocol:
/// [type:1][msg_id:4 big-endian][content_id:16][data]. Acks echo the msg_id
/// of the message they answer.
struct CcrMessage {
  MsgType type = MsgType::ContentData;
  std::uint32_t msg_id = 0;
  ContentId content_id;
  std::vector<std::uint8_t> data;

  std::size_t wire_size() const { return kHeaderSize + data.size(); }
  bool operator==(const CcrMessage&) const = default;
};

/// Serializes to the wire layout above. Throws MalformedMessage when data
/// exceeds 65535 bytes.
std::vector<std::uint8_t> encode_message(const CcrMessage& m);

/// Inverse of encode_message. Throws MalformedMessage on inputs shorter than
/// the 21-byte header or with an unknown type byte.
CcrMessage decode_message(std::span<const std::uint8_t> bytes);

}  // namespace ccrsim

template <>
struct std::hash<ccrsim::ContentId> {
  std::size_t operator()(const ccrsim::ContentId& id) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto b : id.bytes) h = (h ^ b) * 1099511628211ull;
    return h;
  }
};
