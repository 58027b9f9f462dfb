#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "botwatch/flow.h"

namespace botwatch::synth {

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// xorshift64* (Vigna 2014): state ^= state >> 12; state ^= state << 25;
/// state ^= state >> 27; output = state * 0x2545F4914F6CDD1D. The state is
/// seeded with one splitmix64 step of the user seed so that seed 0 is usable.
/// Uniform doubles take the top 53 output bits.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);

  std::uint64_t next();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double log_uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);  // [0, n)
  double symmetric();                    // [-1, 1)

 private:
  std::uint64_t state_;
};

enum class PlantKind : std::uint8_t { kP2PBotGroup, kIrcBotGroup, kScanner, kSpammer };

std::string_view to_string(PlantKind k);

struct PlantedSpec {
  PlantKind kind = PlantKind::kP2PBotGroup;
  std::int64_t size = 3;
  double jitter = 0.05;          // full relative spread of template nbpp/nbps/npkts
  std::int64_t template_points = 4;
  std::int64_t peers = 6;        // P2P: shared peer set
  std::int64_t flows_per_peer = 8;
  std::int64_t pushes = 6;       // IRC: synchronized command rounds
  std::int64_t flows_per_push = 4;
  std::int64_t scan_targets = 0;  // outbound SYN_ONLY attempts per host
  std::int64_t smtp_servers = 0;
  std::int64_t smtp_flows = 0;
};

/// Defaults for each kind: P2P groups of 3 that also scan 120 targets, IRC
/// groups of 4, single scanners (200 targets) and spammers (60 flows to 10
/// servers).
PlantedSpec planted_defaults(PlantKind kind);

inline constexpr Micros kDefaultScenarioStart = 1'700'006'400LL * kMicrosPerSecond;

struct ScenarioSpec {
  std::uint64_t seed = 1;
  double duration = 21600.0;  // seconds
  Micros start_us = kDefaultScenarioStart;
  std::int64_t benign_hosts = 20;
  double benign_flow_rate = 10.0;  // flows per host per hour
  double benign_irc_fraction = 0.15;
  double benign_smtp_fraction = 0.2;
  std::vector<PlantedSpec> planted;
};

/// Throws InvalidSpec naming the offending field.
void check_spec(const ScenarioSpec& spec);

/// `key = value` text with planted.N.* keys. Throws InvalidSpec.
ScenarioSpec parse_spec(std::string_view text);

struct PlantedTruth {
  PlantKind kind;
  std::vector<HostId> hosts;  // ascending
};

struct GroundTruth {
  std::vector<PlantedTruth> planted;
  std::vector<HostId> malicious;  // ascending
};

struct Scenario {
  std::vector<FlowRecord> flows;  // sorted by start time
  GroundTruth truth;
};

/// Internal address space of generated scenarios.
Cidr internal_network();

/// Deterministic in the spec: identical specs give identical flows.
Scenario generate(const ScenarioSpec& spec);

/// `.truth` sidecar text: planted.N.kind, planted.N.hosts, malicious.
std::string write_truth(const GroundTruth& truth);
GroundTruth parse_truth(std::string_view text);

// Reference scenarios used by the acceptance suite.
ScenarioSpec benign_scenario(std::uint64_t seed, std::int64_t hosts = 50);
ScenarioSpec p2p_scenario(std::uint64_t seed, std::int64_t bots = 3);
ScenarioSpec irc_scenario(std::uint64_t seed, std::int64_t bots = 4);

}  // namespace botwatch::synth
