#include "botwatch/irc_monitor.h"

#include "grouping.h"

namespace botwatch {

GroupingResult group_flows_irc(const std::vector<FlowRecord>& flows, const DetectorConfig& cfg) {
  const Micros bin_us = cfg.pat_bin_us();
  return detail::group_by(flows, cfg.duration_floor, [bin_us](const FlowRecord& f) {
    return GroupKey{f.sip, f.dip, f.dport, f.proto, f.sport, f.start_us / bin_us};
  });
}

std::vector<WindowClusters> detect_irc_groups(const std::vector<FlowRecord>& flows,
                                              const DetectorConfig& cfg) {
  std::vector<WindowClusters> out;
  for (const auto& slice : window_partition(flows, cfg.window_us())) {
    auto grouped = group_flows_irc(slice.flows, cfg);
    WindowClusters wc;
    wc.window = slice.window;
    wc.groups = grouped.groups.size();
    wc.skipped_proto = grouped.skipped_proto;
    wc.skipped_empty = grouped.skipped_empty;
    wc.clusters = multi_host_clusters(cluster_groups(
        std::move(grouped.groups), cfg.similarity_threshold, cfg.resample_points));
    out.push_back(std::move(wc));
  }
  return out;
}

}  // namespace botwatch
