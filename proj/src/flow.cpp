#include "botwatch/flow.h"

#include <charconv>
#include <cstdio>

namespace botwatch {

std::string_view to_string(Proto p) {
  switch (p) {
    case Proto::kTcp: return "tcp";
    case Proto::kUdp: return "udp";
    case Proto::kIcmp: return "icmp";
    case Proto::kOther: return "other";
  }
  return "other";
}

std::string_view to_string(TcpState s) {
  switch (s) {
    case TcpState::kEstablished: return "established";
    case TcpState::kSynOnly: return "syn_only";
    case TcpState::kReset: return "reset";
    case TcpState::kNotTcp: return "not_tcp";
  }
  return "not_tcp";
}

std::optional<Proto> parse_proto(std::string_view s) {
  if (s == "tcp") return Proto::kTcp;
  if (s == "udp") return Proto::kUdp;
  if (s == "icmp") return Proto::kIcmp;
  if (s == "other") return Proto::kOther;
  return std::nullopt;
}

std::optional<TcpState> parse_tcp_state(std::string_view s) {
  if (s == "established") return TcpState::kEstablished;
  if (s == "syn_only") return TcpState::kSynOnly;
  if (s == "reset") return TcpState::kReset;
  if (s == "not_tcp") return TcpState::kNotTcp;
  return std::nullopt;
}

std::optional<Ipv4> Ipv4::parse(std::string_view dotted) {
  std::uint32_t value = 0;
  const char* p = dotted.data();
  const char* end = p + dotted.size();
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (p == end || *p != '.') return std::nullopt;
      ++p;
    }
    // Reject empty octets, signs, and leading zeros ("01").
    if (p == end || *p < '0' || *p > '9') return std::nullopt;
    if (*p == '0' && p + 1 != end && p[1] >= '0' && p[1] <= '9') return std::nullopt;
    unsigned part = 0;
    auto [next, ec] = std::from_chars(p, end, part);
    if (ec != std::errc() || part > 255) return std::nullopt;
    p = next;
    value = (value << 8) | part;
  }
  if (p != end) return std::nullopt;
  return Ipv4(value);
}

std::string Ipv4::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", (value_ >> 24) & 0xff, (value_ >> 16) & 0xff,
                (value_ >> 8) & 0xff, value_ & 0xff);
  return buf;
}

Cidr::Cidr(Ipv4 base, int prefix_len)
    : prefix_len_(prefix_len),
      mask_(prefix_len <= 0 ? 0u : ~std::uint32_t{0} << (32 - prefix_len)) {
  base_ = Ipv4(base.value() & mask_);
}

std::optional<Cidr> Cidr::parse(std::string_view text) {
  auto slash = text.find('/');
  auto addr = Ipv4::parse(text.substr(0, slash));
  if (!addr) return std::nullopt;
  if (slash == std::string_view::npos) return Cidr(*addr, 32);
  auto len_text = text.substr(slash + 1);
  int len = -1;
  auto [ptr, ec] = std::from_chars(len_text.data(), len_text.data() + len_text.size(), len);
  if (len_text.empty() || ec != std::errc() || ptr != len_text.data() + len_text.size() ||
      len < 0 || len > 32) {
    return std::nullopt;
  }
  return Cidr(*addr, len);
}

std::string Cidr::to_string() const {
  return base_.to_string() + "/" + std::to_string(prefix_len_);
}

std::vector<std::string> validate_flow(const FlowRecord& rec) {
  std::vector<std::string> violations;
  if (rec.start_us < 0) violations.emplace_back("start_ts must be >= 0");
  if (rec.duration_us < 0) violations.emplace_back("duration must be >= 0");
  if (rec.proto != Proto::kTcp && rec.tcp_state != TcpState::kNotTcp) {
    violations.emplace_back("proto≠TCP requires NOT_TCP");
  }
  if (rec.npkts == 0 && rec.nbytes != 0) violations.emplace_back("npkts=0 requires nbytes=0");
  if (rec.payload_prefix.size() > kMaxPayloadPrefix) {
    violations.emplace_back("payload_prefix longer than 64 bytes");
  }
  return violations;
}

}  // namespace botwatch
