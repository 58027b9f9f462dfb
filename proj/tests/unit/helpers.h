#pragma once

#include <string>

#include "botwatch/flow.h"

namespace botwatch::test {

inline Ipv4 ip(const char* dotted) { return *Ipv4::parse(dotted); }

// Well-formed TCP flow; tweak fields afterwards.
inline FlowRecord flow(const char* sip, const char* dip, std::uint16_t dport,
                       std::uint64_t npkts = 10, std::uint64_t nbytes = 1000,
                       Micros start_us = 0, Micros duration_us = kMicrosPerSecond) {
  FlowRecord f;
  f.start_us = start_us;
  f.duration_us = duration_us;
  f.proto = Proto::kTcp;
  f.sip = ip(sip);
  f.sport = 40000;
  f.dip = ip(dip);
  f.dport = dport;
  f.npkts = npkts;
  f.nbytes = nbytes;
  f.tcp_state = TcpState::kEstablished;
  return f;
}

inline FlowRecord udp(FlowRecord f) {
  f.proto = Proto::kUdp;
  f.tcp_state = TcpState::kNotTcp;
  return f;
}

inline FlowRecord syn_only(FlowRecord f) {
  f.tcp_state = TcpState::kSynOnly;
  return f;
}

}  // namespace botwatch::test
