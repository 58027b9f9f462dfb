#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "botwatch/flow.h"

namespace botwatch {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One `key = value` entry with the line it came from.
struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
/// Throws ConfigError on a line without `=`, an empty key, or a duplicate key.
std::vector<KeyValue> parse_key_values(std::string_view text);

double parse_decimal(const KeyValue& kv);
std::int64_t parse_integer(const KeyValue& kv);
bool parse_bool(const KeyValue& kv);

enum class VoteMode : std::uint8_t { kAnd, kOr, kMajority };

std::string_view to_string(VoteMode m);

/// (proto, port) pair scored as high-severity by the scan detectors.
using ServicePort = std::pair<Proto, std::uint16_t>;

struct DetectorConfig {
  double window_seconds = 21600.0;
  double similarity_threshold = 0.85;
  int resample_points = 32;
  int min_group_size = 3;
  double pat_bin_seconds = 60.0;
  double w1 = 3.0;
  double w2 = 1.0;
  double isd_threshold = 10.0;
  VoteMode osd_mode = VoteMode::kMajority;
  double osd_s1_threshold = 5.0;
  double osd_s2_threshold = 0.5;
  double osd_s3_threshold = 0.9;
  std::int64_t osd_min_scans = 10;
  std::int64_t spam_distinct_servers = 5;
  std::int64_t spam_total_flows = 50;
  std::set<ServicePort> hs_ports;
  double duration_floor = 0.001;
  bool irc_require_malicious = false;

  Micros window_us() const;
  Micros pat_bin_us() const;
  bool is_high_severity(Proto proto, std::uint16_t port) const {
    return hs_ports.contains({proto, port});
  }
};

DetectorConfig default_config();

/// Throws ConfigError naming the first violated invariant.
void check_config(const DetectorConfig& cfg);

/// Applies a config file over the defaults. Unknown keys are an error.
DetectorConfig parse_config(std::string_view text);

/// `tcp:445,udp:1434` style list.
std::set<ServicePort> parse_hs_ports(std::string_view text);
std::string format_hs_ports(const std::set<ServicePort>& ports);

}  // namespace botwatch
