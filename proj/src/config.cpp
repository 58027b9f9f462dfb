#include "botwatch/config.h"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

namespace botwatch {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const KeyValue& kv, const std::string& what) {
  throw ConfigError("line " + std::to_string(kv.line) + ": " + kv.key + ": " + what);
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    KeyValue kv{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                line_no};
    if (kv.key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(kv.key).second) fail(kv, "duplicate key");
    out.push_back(std::move(kv));
  }
  return out;
}

double parse_decimal(const KeyValue& kv) {
  double v = 0;
  const auto* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, v);
  if (kv.value.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(kv, "not a decimal: '" + kv.value + "'");
  }
  return v;
}

std::int64_t parse_integer(const KeyValue& kv) {
  std::int64_t v = 0;
  const auto* end = kv.value.data() + kv.value.size();
  auto [ptr, ec] = std::from_chars(kv.value.data(), end, v);
  if (kv.value.empty() || ec != std::errc() || ptr != end) {
    fail(kv, "not an integer: '" + kv.value + "'");
  }
  return v;
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true") return true;
  if (kv.value == "false") return false;
  fail(kv, "expected true or false");
}

std::string_view to_string(VoteMode m) {
  switch (m) {
    case VoteMode::kAnd: return "AND";
    case VoteMode::kOr: return "OR";
    case VoteMode::kMajority: return "MAJORITY";
  }
  return "MAJORITY";
}

Micros DetectorConfig::window_us() const {
  return static_cast<Micros>(std::llround(window_seconds * 1e6));
}

Micros DetectorConfig::pat_bin_us() const {
  return static_cast<Micros>(std::llround(pat_bin_seconds * 1e6));
}

DetectorConfig default_config() {
  DetectorConfig cfg;
  for (std::uint16_t port : {135, 139, 445, 1433, 2967, 3306, 5900}) {
    cfg.hs_ports.insert({Proto::kTcp, port});
  }
  for (std::uint16_t port : {137, 1434}) cfg.hs_ports.insert({Proto::kUdp, port});
  return cfg;
}

void check_config(const DetectorConfig& cfg) {
  if (!(cfg.window_seconds > 0) || cfg.window_us() < 1) {
    throw ConfigError("window_seconds must be > 0");
  }
  if (!(cfg.similarity_threshold >= 0 && cfg.similarity_threshold <= 1)) {
    throw ConfigError("similarity_threshold must lie in [0,1]");
  }
  if (cfg.resample_points < 2) throw ConfigError("resample_points must be >= 2");
  if (cfg.min_group_size < 1) throw ConfigError("min_group_size must be >= 1");
  if (!(cfg.pat_bin_seconds > 0) || cfg.pat_bin_us() < 1) {
    throw ConfigError("pat_bin_seconds must be > 0");
  }
  if (cfg.w1 < 0 || cfg.w2 < 0) throw ConfigError("w1 and w2 must be >= 0");
  if (cfg.isd_threshold < 0 || cfg.osd_s1_threshold < 0 || cfg.osd_s2_threshold < 0 ||
      cfg.osd_s3_threshold < 0 || cfg.osd_min_scans < 0 || cfg.spam_distinct_servers < 0 ||
      cfg.spam_total_flows < 0) {
    throw ConfigError("thresholds must be >= 0");
  }
  if (!(cfg.duration_floor > 0)) throw ConfigError("duration_floor must be > 0");
}

std::set<ServicePort> parse_hs_ports(std::string_view text) {
  std::set<ServicePort> ports;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;

    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("hs_ports entry '" + std::string(item) + "' is not proto:port");
    }
    auto proto = parse_proto(trim(item.substr(0, colon)));
    if (!proto || (*proto != Proto::kTcp && *proto != Proto::kUdp)) {
      throw ConfigError("hs_ports entry '" + std::string(item) + "' needs tcp or udp");
    }
    auto port_text = trim(item.substr(colon + 1));
    unsigned port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (port_text.empty() || ec != std::errc() || ptr != port_text.data() + port_text.size() ||
        port > 65535) {
      throw ConfigError("hs_ports entry '" + std::string(item) + "' has a bad port");
    }
    ports.insert({*proto, static_cast<std::uint16_t>(port)});
  }
  return ports;
}

std::string format_hs_ports(const std::set<ServicePort>& ports) {
  std::string out;
  for (const auto& [proto, port] : ports) {
    if (!out.empty()) out += ',';
    out += to_string(proto);
    out += ':';
    out += std::to_string(port);
  }
  return out;
}

DetectorConfig parse_config(std::string_view text) {
  DetectorConfig cfg = default_config();
  using Setter = std::function<void(DetectorConfig&, const KeyValue&)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"window_seconds", [](auto& c, const auto& kv) { c.window_seconds = parse_decimal(kv); }},
      {"similarity_threshold",
       [](auto& c, const auto& kv) { c.similarity_threshold = parse_decimal(kv); }},
      {"resample_points",
       [](auto& c, const auto& kv) {
         auto v = parse_integer(kv);
         if (v < 2 || v > 1'000'000) fail(kv, "must be in [2, 1000000]");
         c.resample_points = static_cast<int>(v);
       }},
      {"min_group_size",
       [](auto& c, const auto& kv) {
         auto v = parse_integer(kv);
         if (v < 1 || v > 1'000'000) fail(kv, "must be in [1, 1000000]");
         c.min_group_size = static_cast<int>(v);
       }},
      {"pat_bin_seconds", [](auto& c, const auto& kv) { c.pat_bin_seconds = parse_decimal(kv); }},
      {"w1", [](auto& c, const auto& kv) { c.w1 = parse_decimal(kv); }},
      {"w2", [](auto& c, const auto& kv) { c.w2 = parse_decimal(kv); }},
      {"isd_threshold", [](auto& c, const auto& kv) { c.isd_threshold = parse_decimal(kv); }},
      {"osd_mode",
       [](auto& c, const auto& kv) {
         if (kv.value == "AND") c.osd_mode = VoteMode::kAnd;
         else if (kv.value == "OR") c.osd_mode = VoteMode::kOr;
         else if (kv.value == "MAJORITY") c.osd_mode = VoteMode::kMajority;
         else fail(kv, "expected AND, OR or MAJORITY");
       }},
      {"osd_s1_threshold", [](auto& c, const auto& kv) { c.osd_s1_threshold = parse_decimal(kv); }},
      {"osd_s2_threshold", [](auto& c, const auto& kv) { c.osd_s2_threshold = parse_decimal(kv); }},
      {"osd_s3_threshold", [](auto& c, const auto& kv) { c.osd_s3_threshold = parse_decimal(kv); }},
      {"osd_min_scans", [](auto& c, const auto& kv) { c.osd_min_scans = parse_integer(kv); }},
      {"spam_distinct_servers",
       [](auto& c, const auto& kv) { c.spam_distinct_servers = parse_integer(kv); }},
      {"spam_total_flows", [](auto& c, const auto& kv) { c.spam_total_flows = parse_integer(kv); }},
      {"hs_ports", [](auto& c, const auto& kv) { c.hs_ports = parse_hs_ports(kv.value); }},
      {"duration_floor", [](auto& c, const auto& kv) { c.duration_floor = parse_decimal(kv); }},
      {"irc_require_malicious",
       [](auto& c, const auto& kv) { c.irc_require_malicious = parse_bool(kv); }},
  };

  for (const auto& kv : parse_key_values(text)) {
    auto it = setters.find(kv.key);
    if (it == setters.end()) fail(kv, "unknown key");
    it->second(cfg, kv);
  }
  check_config(cfg);
  return cfg;
}

}  // namespace botwatch
