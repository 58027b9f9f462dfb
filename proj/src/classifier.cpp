#include "botwatch/classifier.h"

#include <array>

namespace botwatch {
namespace {

constexpr std::array<std::string_view, 6> kIrcTokens = {"NICK ", "PASS ", "USER ",
                                                        "JOIN ", "OPER ", "PRIVMSG "};
constexpr std::array<std::string_view, 3> kHttpMethods = {"GET ", "POST ", "HEAD "};

bool starts_with_any(std::string_view s, const auto& prefixes) {
  for (auto p : prefixes) {
    if (s.starts_with(p)) return true;
  }
  return false;
}

bool has_irc_line(std::string_view payload) {
  // LF splits lines; a CR before it belongs to the previous line and never
  // starts a token, so CRLF needs no extra handling.
  while (true) {
    if (starts_with_any(payload, kIrcTokens)) return true;
    auto nl = payload.find('\n');
    if (nl == std::string_view::npos) return false;
    payload.remove_prefix(nl + 1);
  }
}

}  // namespace

std::string_view to_string(AppLabel label) {
  switch (label) {
    case AppLabel::kIrc: return "irc";
    case AppLabel::kHttp: return "http";
    case AppLabel::kOther: return "other";
  }
  return "other";
}

AppLabel classify_flow(const FlowRecord& rec) {
  if (rec.proto != Proto::kTcp) return AppLabel::kOther;
  std::string_view payload = rec.payload_prefix;
  if (has_irc_line(payload)) return AppLabel::kIrc;
  if (starts_with_any(payload, kHttpMethods)) return AppLabel::kHttp;
  return AppLabel::kOther;
}

LabeledStreams partition_by_label(const std::vector<FlowRecord>& flows) {
  LabeledStreams out;
  for (const auto& f : flows) {
    switch (classify_flow(f)) {
      case AppLabel::kIrc: out.irc.push_back(f); break;
      case AppLabel::kHttp: out.http.push_back(f); break;
      case AppLabel::kOther: out.other.push_back(f); break;
    }
  }
  return out;
}

}  // namespace botwatch
