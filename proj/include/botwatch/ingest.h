#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "botwatch/flow.h"

namespace botwatch {

inline constexpr std::string_view kFlowHeader =
    "start_ts,duration,proto,sip,sport,dip,dport,npkts,nbytes,tcp_state,payload_prefix_hex";

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadHeader : public IngestError {
 public:
  BadHeader(int line, const std::string& found);
  int line() const { return line_; }

 private:
  int line_;
};

class MalformedRow : public IngestError {
 public:
  MalformedRow(int line, std::string reason);
  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

/// Parses a flow CSV. `#` lines are ignored; the first other line must be the
/// header. Aborts on the first bad row.
std::vector<FlowRecord> parse_flow_file(std::string_view text);

std::string write_flow_file(const std::vector<FlowRecord>& flows);

/// Decimal seconds with at most six fractional digits, e.g. "12.5".
std::optional<Micros> parse_seconds(std::string_view text);
std::string format_seconds(Micros us);

std::string hex_encode(std::string_view bytes);
std::optional<std::string> hex_decode(std::string_view hex);

}  // namespace botwatch
