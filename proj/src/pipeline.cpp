#include "botwatch/pipeline.h"

#include <map>

#include "botwatch/irc_monitor.h"
#include "botwatch/p2p_monitor.h"

namespace botwatch {

std::vector<FlowRecord> StagedFlows::kept() const {
  std::vector<FlowRecord> all;
  all.reserve(labeled.irc.size() + labeled.http.size() + labeled.other.size() + failed.size());
  for (const auto* stream : {&labeled.irc, &labeled.http, &labeled.other, &failed}) {
    all.insert(all.end(), stream->begin(), stream->end());
  }
  return all;
}

StagedFlows stage_flows(const std::vector<FlowRecord>& flows, const Whitelist& wl) {
  auto wl_result = apply_whitelist(flows, wl);
  auto split = split_handshake(wl_result.kept);
  StagedFlows staged;
  staged.ingested = flows.size();
  staged.whitelisted = wl_result.dropped_count;
  staged.failed = std::move(split.failed);
  staged.labeled = partition_by_label(split.clean);
  return staged;
}

BotnetReport run_detection(const std::vector<FlowRecord>& flows, const Whitelist& wl,
                           const DetectorConfig& cfg, const Cidr& internal) {
  check_config(cfg);
  const auto staged = stage_flows(flows, wl);
  const Micros window_us = cfg.window_us();

  PipelineCounters counters;
  counters.flows_ingested = staged.ingested;
  counters.whitelisted = staged.whitelisted;
  counters.failed = staged.failed.size();
  counters.irc = staged.labeled.irc.size();
  counters.http = staged.labeled.http.size();
  counters.other = staged.labeled.other.size();

  std::map<std::int64_t, WindowResult> windows;
  auto slot = [&](const WindowIndex& w) -> WindowResult& {
    auto& r = windows[w.index];
    r.window = w;
    return r;
  };

  for (auto& wc : detect_p2p_candidates(staged.labeled.other, cfg)) {
    counters.skipped_non_tcp_udp += wc.skipped_proto;
    counters.skipped_zero_packets += wc.skipped_empty;
    slot(wc.window).p2p_clusters = std::move(wc.clusters);
  }
  for (auto& wc : detect_irc_groups(staged.labeled.irc, cfg)) {
    counters.skipped_non_tcp_udp += wc.skipped_proto;
    counters.skipped_zero_packets += wc.skipped_empty;
    slot(wc.window).irc_clusters = std::move(wc.clusters);
  }

  std::map<std::int64_t, std::vector<FlowRecord>> failed_by_window;
  for (auto& slice : window_partition(staged.failed, window_us)) {
    failed_by_window[slice.window.index] = std::move(slice.flows);
  }
  for (const auto& slice : window_partition(staged.kept(), window_us)) {
    const auto& failed = failed_by_window[slice.window.index];
    slot(slice.window).activity = assess_activity(slice.flows, failed, cfg, internal);
  }

  std::vector<WindowResult> results;
  results.reserve(windows.size());
  for (auto& [index, r] : windows) results.push_back(std::move(r));
  return build_report(std::move(results), counters, cfg);
}

}  // namespace botwatch
