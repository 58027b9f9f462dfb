#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "botwatch/flow.h"

namespace botwatch {

/// Destination prefixes whose traffic is dropped before analysis.
class Whitelist {
 public:
  Whitelist() = default;
  explicit Whitelist(std::vector<Cidr> entries);

  /// One CIDR or bare IPv4 per line; `#` comments and blank lines ignored.
  /// Throws ConfigError on an unparsable entry.
  static Whitelist parse(std::string_view text);

  bool matches(Ipv4 addr) const;
  const std::vector<Cidr>& entries() const { return entries_; }

 private:
  std::vector<Cidr> entries_;  // sorted, deduplicated
};

struct WhitelistResult {
  std::vector<FlowRecord> kept;
  std::size_t dropped_count = 0;
};

/// Drops flows whose destination falls in the whitelist. Sources are never checked.
WhitelistResult apply_whitelist(const std::vector<FlowRecord>& flows, const Whitelist& wl);

struct FilterOutput {
  std::vector<FlowRecord> clean;
  std::vector<FlowRecord> failed;  // SYN_ONLY or RESET
  std::size_t whitelisted_count = 0;
};

/// Routes incomplete TCP handshakes to `failed`; looks only at tcp_state.
FilterOutput split_handshake(const std::vector<FlowRecord>& flows);

inline bool is_failed_handshake(const FlowRecord& f) {
  return f.tcp_state == TcpState::kSynOnly || f.tcp_state == TcpState::kReset;
}

}  // namespace botwatch
