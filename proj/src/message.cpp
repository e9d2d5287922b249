#include "ccrsim/message.hpp"

#include <openssl/evp.h>

#include <cstring>

namespace ccrsim {

std::string ContentId::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 0xf];
  }
  return out;
}

ContentId ContentId::from_name(const std::string& name) {
  ContentId id;
  unsigned int len = 0;
  if (!EVP_Digest(name.data(), name.size(), id.bytes.data(), &len, EVP_md5(),
                  nullptr) ||
      len != id.bytes.size()) {
    throw SimError("MD5 digest failed");
  }
  return id;
}

ContentId ContentId::from_hex(const std::string& hex) {
  if (hex.size() != 32) {
    throw MalformedMessage("content id hex must be 32 characters");
  }
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  ContentId id;
  for (std::size_t i = 0; i < 16; ++i) {
    int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw MalformedMessage("bad content id hex");
    id.bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return id;
}

const char* to_string(MsgType t) {
  switch (t) {
    case MsgType::ContentRegistration: return "content-registration";
    case MsgType::ContentRegistrationAck: return "content-registration-ack";
    case MsgType::ContentAdvertisement: return "content-advertisement";
    case MsgType::ContentAdvertisementAck: return "content-advertisement-ack";
    case MsgType::ContentData: return "content-data";
    case MsgType::ContentRequest: return "content-request";
    case MsgType::RelayElection: return "relay-election";
    case MsgType::RelayElectionAck: return "relay-election-ack";
    case MsgType::GoRoleNotify: return "go-role-notify";
    case MsgType::GoRoleNotifyAck: return "go-role-notify-ack";
    case MsgType::RouteFailureNotify: return "route-failure-notify";
  }
  return "?";
}

bool is_ack(MsgType t) {
  switch (t) {
    case MsgType::ContentRegistrationAck:
    case MsgType::ContentAdvertisementAck:
    case MsgType::RelayElectionAck:
    case MsgType::GoRoleNotifyAck: return true;
    default: return false;
  }
}

MsgType ack_for(MsgType t) {
  switch (t) {
    case MsgType::ContentRegistration: return MsgType::ContentRegistrationAck;
    case MsgType::ContentAdvertisement:
      return MsgType::ContentAdvertisementAck;
    case MsgType::RelayElection: return MsgType::RelayElectionAck;
    case MsgType::GoRoleNotify: return MsgType::GoRoleNotifyAck;
    default: throw SimError(std::string("no ack type for ") + to_string(t));
  }
}

std::vector<std::uint8_t> encode_message(const CcrMessage& m) {
  if (m.data.size() > kMaxPayload) {
    throw MalformedMessage("payload exceeds 65535 bytes");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + m.data.size());
  out.push_back(static_cast<std::uint8_t>(m.type));
  out.push_back(static_cast<std::uint8_t>(m.msg_id >> 24));
  out.push_back(static_cast<std::uint8_t>(m.msg_id >> 16));
  out.push_back(static_cast<std::uint8_t>(m.msg_id >> 8));
  out.push_back(static_cast<std::uint8_t>(m.msg_id));
  out.insert(out.end(), m.content_id.bytes.begin(), m.content_id.bytes.end());
  out.insert(out.end(), m.data.begin(), m.data.end());
  return out;
}

CcrMessage decode_message(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw MalformedMessage("message shorter than the 21-byte header");
  }
  std::uint8_t type = bytes[0];
  if (type < 1 || type > 11) {
    throw MalformedMessage("unknown message type byte " + std::to_string(type));
  }
  if (bytes.size() > kHeaderSize + kMaxPayload) {
    throw MalformedMessage("payload exceeds 65535 bytes");
  }
  CcrMessage m;
  m.type = static_cast<MsgType>(type);
  m.msg_id = (std::uint32_t(bytes[1]) << 24) | (std::uint32_t(bytes[2]) << 16) |
             (std::uint32_t(bytes[3]) << 8) | std::uint32_t(bytes[4]);
  std::memcpy(m.content_id.bytes.data(), bytes.data() + 5, 16);
  m.data.assign(bytes.begin() + kHeaderSize, bytes.end());
  return m;
}

}  // namespace ccrsim
