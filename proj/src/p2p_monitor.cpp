#include "botwatch/p2p_monitor.h"

#include <algorithm>
#include <map>

#include "grouping.h"

namespace botwatch {

WindowIndex window_at(std::int64_t index, Micros window_us) {
  return {index, index * window_us, (index + 1) * window_us};
}

std::vector<WindowSlice> window_partition(const std::vector<FlowRecord>& flows,
                                          Micros window_us) {
  if (window_us <= 0) throw std::invalid_argument("window length must be positive");
  std::map<std::int64_t, std::vector<FlowRecord>> buckets;
  for (const auto& f : flows) buckets[f.start_us / window_us].push_back(f);

  std::vector<WindowSlice> out;
  out.reserve(buckets.size());
  for (auto& [index, slice] : buckets) {
    out.push_back({window_at(index, window_us), std::move(slice)});
  }
  return out;
}

GroupingResult group_flows_p2p(const std::vector<FlowRecord>& flows, double duration_floor) {
  return detail::group_by(flows, duration_floor, [](const FlowRecord& f) {
    return GroupKey{f.sip, f.dip, f.dport, f.proto, std::nullopt, std::nullopt};
  });
}

std::vector<SimilarityCluster> multi_host_clusters(std::vector<SimilarityCluster> clusters) {
  std::erase_if(clusters, [](const SimilarityCluster& c) { return c.hosts.size() < 2; });
  return clusters;
}

std::vector<WindowClusters> detect_p2p_candidates(const std::vector<FlowRecord>& flows,
                                                  const DetectorConfig& cfg) {
  std::vector<WindowClusters> out;
  for (const auto& slice : window_partition(flows, cfg.window_us())) {
    auto grouped = group_flows_p2p(slice.flows, cfg.duration_floor);
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
