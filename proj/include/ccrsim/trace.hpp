#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccrsim/netmodel.hpp"

namespace ccrsim {

/// One exported event record: a MAC transmission attempt or an IP-layer
/// verdict. CSV columns: time, layer, src, dst, ta, ra, size, outcome.
struct TraceRecord {
  SimTime time = 0;
  enum class Layer { Mac, Ip } layer = Layer::Mac;
  Ipv4 src, dst;
  MacAddr ta, ra;  // meaningful for MAC rows only
  int size = 0;
  std::string outcome;
};

class Trace {
 public:
  void mac_attempt(SimTime start, const MacFrame& f, bool lost, int attempt);
  void ip_event(SimTime t, Ipv4 src, Ipv4 dst, int size,
                const std::string& outcome);

  const std::vector<TraceRecord>& records() const { return records_; }
  void clear() { records_.clear(); }

  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

 private:
  std::vector<TraceRecord> records_;
};

}  // namespace ccrsim
