#include "ccrsim/net.hpp"

#include <cinttypes>
#include <cstdio>

namespace ccrsim {

std::string format_time(SimTime t) {
  char buf[40];
  std::int64_t sec = t / 1000000000;
  std::int64_t frac = t % 1000000000;
  if (frac < 0) {
    sec -= 1;
    frac += 1000000000;
  }
  std::snprintf(buf, sizeof(buf), "%" PRId64 ".%09" PRId64, sec, frac);
  return buf;
}

std::string Ipv4::str() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", (value >> 24) & 0xff,
                (value >> 16) & 0xff, (value >> 8) & 0xff, value & 0xff);
  return buf;
}

Ipv4 Ipv4::parse(const std::string& text) {
  unsigned a, b, c, d;
  char tail;
  if (std::sscanf(text.c_str(), "%u.%u.%u.%u%c", &a, &b, &c, &d, &tail) != 4 ||
      a > 255 || b > 255 || c > 255 || d > 255) {
    throw std::invalid_argument("bad IPv4 address: " + text);
  }
  return Ipv4(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
              static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d));
}

std::string MacAddr::str() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x",
                unsigned((value >> 40) & 0xff), unsigned((value >> 32) & 0xff),
                unsigned((value >> 24) & 0xff), unsigned((value >> 16) & 0xff),
                unsigned((value >> 8) & 0xff), unsigned(value & 0xff));
  return buf;
}

}  // namespace ccrsim
