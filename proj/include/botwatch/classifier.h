#pragma once

#include <string_view>
#include <vector>

#include "botwatch/flow.h"

namespace botwatch {

enum class AppLabel : std::uint8_t { kIrc, kHttp, kOther };

std::string_view to_string(AppLabel label);

/// Labels a flow from its stored payload prefix. Only proto and
/// payload_prefix are consulted; ports are deliberately ignored.
///
/// IRC: TCP, and some CRLF/LF-separated line begins with one of NICK, PASS,
/// USER, JOIN, OPER, PRIVMSG followed by a single space (case-sensitive).
/// HTTP: TCP, not IRC, and the prefix begins with "GET ", "POST " or "HEAD ".
AppLabel classify_flow(const FlowRecord& rec);

struct LabeledStreams {
  std::vector<FlowRecord> irc;
  std::vector<FlowRecord> http;
  std::vector<FlowRecord> other;
};

LabeledStreams partition_by_label(const std::vector<FlowRecord>& flows);

}  // namespace botwatch
