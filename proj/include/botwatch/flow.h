#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace botwatch {

/// Microsecond timestamps and durations. Flow files carry at most six
/// fractional digits, so integers keep parse/write lossless.
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;

inline double to_seconds(Micros us) { return static_cast<double>(us) / 1e6; }

enum class Proto : std::uint8_t { kTcp, kUdp, kIcmp, kOther };
enum class TcpState : std::uint8_t { kEstablished, kSynOnly, kReset, kNotTcp };

std::string_view to_string(Proto p);
std::string_view to_string(TcpState s);
std::optional<Proto> parse_proto(std::string_view s);
std::optional<TcpState> parse_tcp_state(std::string_view s);

/// IPv4 address held in host byte order; ordering is numeric.
class Ipv4 {
 public:
  constexpr Ipv4() = default;
  constexpr explicit Ipv4(std::uint32_t value) : value_(value) {}

  constexpr std::uint32_t value() const { return value_; }

  static std::optional<Ipv4> parse(std::string_view dotted);
  std::string to_string() const;

  friend constexpr auto operator<=>(Ipv4, Ipv4) = default;

 private:
  std::uint32_t value_ = 0;
};

/// Internal host identity. Canonical ordering everywhere is by address value.
using HostId = Ipv4;

/// IPv4 prefix, e.g. 10.0.0.0/8. Host bits are cleared on construction.
class Cidr {
 public:
  Cidr() = default;
  Cidr(Ipv4 base, int prefix_len);

  static std::optional<Cidr> parse(std::string_view text);

  bool contains(Ipv4 addr) const { return (addr.value() & mask_) == base_.value(); }
  Ipv4 base() const { return base_; }
  int prefix_len() const { return prefix_len_; }
  std::string to_string() const;

  friend auto operator<=>(const Cidr&, const Cidr&) = default;

 private:
  Ipv4 base_;
  int prefix_len_ = 0;
  std::uint32_t mask_ = 0;
};

inline constexpr std::size_t kMaxPayloadPrefix = 64;

struct FlowRecord {
  Micros start_us = 0;
  Micros duration_us = 0;
  Proto proto = Proto::kTcp;
  Ipv4 sip;
  std::uint16_t sport = 0;
  Ipv4 dip;
  std::uint16_t dport = 0;
  std::uint64_t npkts = 0;
  std::uint64_t nbytes = 0;
  TcpState tcp_state = TcpState::kEstablished;
  std::string payload_prefix;  // raw bytes

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

/// Returns every violated FlowRecord invariant as a human-readable string.
/// An empty result means the record is well formed.
std::vector<std::string> validate_flow(const FlowRecord& rec);

}  // namespace botwatch
