#include "ccrsim/trace.hpp"

#include <ostream>
#include <sstream>

namespace ccrsim {

void Trace::mac_attempt(SimTime start, const MacFrame& f, bool lost,
                        int attempt) {
  TraceRecord r;
  r.time = start;
  r.layer = TraceRecord::Layer::Mac;
  r.src = f.src_ip;
  r.dst = f.dst_ip;
  r.ta = f.ta;
  r.ra = f.ra;
  r.size = f.size;
  r.outcome = lost ? "lost" : "ok";
  if (attempt > 1) {
    r.outcome += ",retry" + std::to_string(attempt - 1);
  }
  records_.push_back(std::move(r));
}

void Trace::ip_event(SimTime t, Ipv4 src, Ipv4 dst, int size,
                     const std::string& outcome) {
  TraceRecord r;
  r.time = t;
  r.layer = TraceRecord::Layer::Ip;
  r.src = src;
  r.dst = dst;
  r.size = size;
  r.outcome = outcome;
  records_.push_back(std::move(r));
}

void Trace::write_csv(std::ostream& out) const {
  out << "time,layer,src,dst,ta,ra,size,outcome\n";
  for (const auto& r : records_) {
    out << format_time(r.time) << ',';
    out << (r.layer == TraceRecord::Layer::Mac ? "mac" : "ip") << ',';
    out << r.src.str() << ',' << r.dst.str() << ',';
    if (r.layer == TraceRecord::Layer::Mac) {
      out << r.ta.str() << ',' << r.ra.str();
    } else {
      out << ',';
    }
    out << ',' << r.size << ',' << '"' << r.outcome << '"' << '\n';
  }
}

std::string Trace::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

}  // namespace ccrsim
