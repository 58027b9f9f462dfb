#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "botwatch/config.h"
#include "botwatch/flow.h"
#include "botwatch/similarity.h"

namespace botwatch {

/// Half-open analysis interval [start_us, end_us), aligned to the epoch.
struct WindowIndex {
  std::int64_t index = 0;
  Micros start_us = 0;
  Micros end_us = 0;

  friend auto operator<=>(const WindowIndex&, const WindowIndex&) = default;
};

WindowIndex window_at(std::int64_t index, Micros window_us);

struct WindowSlice {
  WindowIndex window;
  std::vector<FlowRecord> flows;  // input order preserved
};

/// Buckets flows by floor(start_ts / window). Ascending windows, empty ones omitted.
std::vector<WindowSlice> window_partition(const std::vector<FlowRecord>& flows, Micros window_us);

struct GroupingResult {
  std::vector<FlowGroup> groups;  // canonical order
  std::size_t skipped_proto = 0;  // neither TCP nor UDP
  std::size_t skipped_empty = 0;  // zero packets, no features
};

/// One group per (sip, dip, dport, proto) over TCP/UDP flows of one window.
GroupingResult group_flows_p2p(const std::vector<FlowRecord>& flows, double duration_floor);

struct WindowClusters {
  WindowIndex window;
  std::vector<SimilarityCluster> clusters;
  std::size_t groups = 0;
  std::size_t skipped_proto = 0;
  std::size_t skipped_empty = 0;
};

/// Keeps clusters spanning at least two distinct source hosts.
std::vector<SimilarityCluster> multi_host_clusters(std::vector<SimilarityCluster> clusters);

/// Windows the OTHER-labelled stream, groups each window and clusters the
/// groups; only multi-host clusters are kept.
std::vector<WindowClusters> detect_p2p_candidates(const std::vector<FlowRecord>& flows,
                                                  const DetectorConfig& cfg);

}  // namespace botwatch
