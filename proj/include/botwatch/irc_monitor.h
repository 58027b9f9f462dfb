#pragma once

#include <vector>

#include "botwatch/config.h"
#include "botwatch/p2p_monitor.h"

namespace botwatch {

/// One group per (sip, dip, sport, dport, pat_bin, proto), where
/// pat_bin = floor(start_ts / pat_bin_seconds). Non-TCP/UDP flows are skipped.
GroupingResult group_flows_irc(const std::vector<FlowRecord>& flows, const DetectorConfig& cfg);

/// Same windowing and clustering as the P2P path, over the IRC stream.
std::vector<WindowClusters> detect_irc_groups(const std::vector<FlowRecord>& flows,
                                              const DetectorConfig& cfg);

}  // namespace botwatch
