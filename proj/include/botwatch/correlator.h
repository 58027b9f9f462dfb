#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botwatch/activity.h"
#include "botwatch/config.h"
#include "botwatch/p2p_monitor.h"
#include "botwatch/similarity.h"

namespace botwatch {

enum class DetectionPath : std::uint8_t { kP2P, kIrc };

std::string_view to_string(DetectionPath p);

struct HostFlags {
  HostId host;
  bool isd = false;
  bool osd = false;
  bool spam = false;
};

struct BotnetGroup {
  WindowIndex window;
  DetectionPath path = DetectionPath::kP2P;
  std::vector<HostId> hosts;  // ascending
  std::vector<GroupKey> cluster_keys;
  std::vector<HostFlags> activity;  // one entry per host, same order
};

/// Intersects each cluster with the malicious set; keeps intersections of at
/// least min_group_size hosts. `malicious` must be sorted.
std::vector<BotnetGroup> correlate_p2p(std::span<const SimilarityCluster> clusters,
                                       std::span<const HostId> malicious,
                                       const DetectorConfig& cfg);

/// Emits every IRC cluster with at least min_group_size hosts. With
/// cfg.irc_require_malicious the P2P intersection rule applies instead.
std::vector<BotnetGroup> correlate_irc(std::span<const SimilarityCluster> clusters,
                                       const DetectorConfig& cfg,
                                       std::span<const HostId> malicious = {});

struct PipelineCounters {
  std::size_t flows_ingested = 0;
  std::size_t whitelisted = 0;
  std::size_t failed = 0;
  std::size_t irc = 0;
  std::size_t http = 0;
  std::size_t other = 0;
  std::size_t skipped_non_tcp_udp = 0;
  std::size_t skipped_zero_packets = 0;
};

/// Everything computed for one analysis window.
struct WindowResult {
  WindowIndex window;
  std::vector<SimilarityCluster> p2p_clusters;
  std::vector<SimilarityCluster> irc_clusters;
  ActivityResult activity;
};

struct WindowSummary {
  WindowIndex window;
  std::vector<HostId> malicious;
  std::size_t p2p_clusters = 0;
  std::size_t irc_clusters = 0;
};

struct BotnetReport {
  DetectorConfig config;
  PipelineCounters counters;
  std::vector<BotnetGroup> groups;  // sorted by (window, path, first host)
  std::vector<WindowSummary> windows;
};

/// Correlates each window and assembles the report. Input order of
/// `results` does not matter.
BotnetReport build_report(std::vector<WindowResult> results, const PipelineCounters& counters,
                          const DetectorConfig& cfg);

/// JSON document with top-level keys config, counters, groups, windows.
std::string report_to_json(const BotnetReport& report);

}  // namespace botwatch
