#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "botwatch/p2p_monitor.h"

namespace botwatch::detail {

// Buckets TCP/UDP flows by `key_of` and attaches their features. Shared by
// both monitors so the IRC grouping stays a refinement of the P2P grouping.
template <typename KeyFn>
GroupingResult group_by(const std::vector<FlowRecord>& flows, double duration_floor,
                        KeyFn key_of) {
  GroupingResult out;
  std::vector<FlowRecord> eligible;
  eligible.reserve(flows.size());
  for (const auto& f : flows) {
    if (f.proto != Proto::kTcp && f.proto != Proto::kUdp) {
      ++out.skipped_proto;
    } else if (f.npkts == 0) {
      ++out.skipped_empty;
    } else {
      eligible.push_back(f);
    }
  }

  const auto features = flow_features(eligible, duration_floor);
  std::map<GroupKey, std::vector<FlowFeatures>> buckets;
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    buckets[key_of(eligible[i])].push_back(features[i]);
  }

  out.groups.reserve(buckets.size());
  for (auto& [key, points] : buckets) {
    std::sort(points.begin(), points.end());
    out.groups.push_back({key, std::move(points)});
  }
  return out;
}

}  // namespace botwatch::detail
