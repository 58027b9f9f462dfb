#include "botwatch/correlator.h"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace botwatch {
namespace {

using Json = nlohmann::ordered_json;

std::vector<HostId> intersect(std::span<const HostId> a, std::span<const HostId> b) {
  std::vector<HostId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

BotnetGroup make_group(DetectionPath path, const SimilarityCluster& c, std::vector<HostId> hosts) {
  BotnetGroup g;
  g.path = path;
  g.hosts = std::move(hosts);
  g.cluster_keys = c.group_keys;
  return g;
}

Json window_json(const WindowIndex& w) {
  return Json{{"index", w.index},
              {"start", to_seconds(w.start_us)},
              {"end", to_seconds(w.end_us)}};
}

Json hosts_json(std::span<const HostId> hosts) {
  Json arr = Json::array();
  for (auto h : hosts) arr.push_back(h.to_string());
  return arr;
}

}  // namespace

std::string_view to_string(DetectionPath p) { return p == DetectionPath::kP2P ? "p2p" : "irc"; }

std::vector<BotnetGroup> correlate_p2p(std::span<const SimilarityCluster> clusters,
                                       std::span<const HostId> malicious,
                                       const DetectorConfig& cfg) {
  std::vector<BotnetGroup> out;
  for (const auto& c : clusters) {
    auto hosts = intersect(c.hosts, malicious);
    if (hosts.size() >= static_cast<std::size_t>(cfg.min_group_size)) {
      out.push_back(make_group(DetectionPath::kP2P, c, std::move(hosts)));
    }
  }
  return out;
}

std::vector<BotnetGroup> correlate_irc(std::span<const SimilarityCluster> clusters,
                                       const DetectorConfig& cfg,
                                       std::span<const HostId> malicious) {
  std::vector<BotnetGroup> out;
  for (const auto& c : clusters) {
    auto hosts = cfg.irc_require_malicious ? intersect(c.hosts, malicious) : c.hosts;
    if (hosts.size() >= static_cast<std::size_t>(cfg.min_group_size)) {
      out.push_back(make_group(DetectionPath::kIrc, c, std::move(hosts)));
    }
  }
  return out;
}

BotnetReport build_report(std::vector<WindowResult> results, const PipelineCounters& counters,
                          const DetectorConfig& cfg) {
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.window < b.window; });

  BotnetReport report;
  report.config = cfg;
  report.counters = counters;
  for (const auto& r : results) {
    const auto& malicious = r.activity.malicious;
    std::map<HostId, const HostActivity*> by_host;
    for (const auto& a : r.activity.hosts) by_host.emplace(a.host, &a);

    auto groups = correlate_p2p(r.p2p_clusters, malicious, cfg);
    auto irc = correlate_irc(r.irc_clusters, cfg, malicious);
    groups.insert(groups.end(), std::make_move_iterator(irc.begin()),
                  std::make_move_iterator(irc.end()));
    for (auto& g : groups) {
      g.window = r.window;
      for (auto h : g.hosts) {
        HostFlags flags{h};
        if (auto it = by_host.find(h); it != by_host.end()) {
          flags.isd = it->second->isd_flagged;
          flags.osd = it->second->osd_flagged;
          flags.spam = it->second->spam.flagged;
        }
        g.activity.push_back(flags);
      }
      report.groups.push_back(std::move(g));
    }
    report.windows.push_back(
        {r.window, malicious, r.p2p_clusters.size(), r.irc_clusters.size()});
  }
  std::stable_sort(report.groups.begin(), report.groups.end(), [](const auto& a, const auto& b) {
    if (a.window != b.window) return a.window < b.window;
    if (a.path != b.path) return a.path < b.path;
    return a.hosts.front() < b.hosts.front();
  });
  return report;
}

std::string report_to_json(const BotnetReport& report) {
  const auto& cfg = report.config;
  Json config{{"window_seconds", cfg.window_seconds},
              {"similarity_threshold", cfg.similarity_threshold},
              {"resample_points", cfg.resample_points},
              {"min_group_size", cfg.min_group_size},
              {"pat_bin_seconds", cfg.pat_bin_seconds},
              {"w1", cfg.w1},
              {"w2", cfg.w2},
              {"isd_threshold", cfg.isd_threshold},
              {"osd_mode", to_string(cfg.osd_mode)},
              {"osd_s1_threshold", cfg.osd_s1_threshold},
              {"osd_s2_threshold", cfg.osd_s2_threshold},
              {"osd_s3_threshold", cfg.osd_s3_threshold},
              {"osd_min_scans", cfg.osd_min_scans},
              {"spam_distinct_servers", cfg.spam_distinct_servers},
              {"spam_total_flows", cfg.spam_total_flows},
              {"hs_ports", format_hs_ports(cfg.hs_ports)},
              {"duration_floor", cfg.duration_floor},
              {"irc_require_malicious", cfg.irc_require_malicious}};

  const auto& c = report.counters;
  Json counters{{"flows_ingested", c.flows_ingested},
                {"whitelisted", c.whitelisted},
                {"failed", c.failed},
                {"irc", c.irc},
                {"http", c.http},
                {"other", c.other},
                {"skipped_non_tcp_udp", c.skipped_non_tcp_udp},
                {"skipped_zero_packets", c.skipped_zero_packets}};

  Json groups = Json::array();
  for (const auto& g : report.groups) {
    Json keys = Json::array();
    for (const auto& k : g.cluster_keys) keys.push_back(k.to_string());
    Json activity = Json::object();
    for (const auto& f : g.activity) {
      activity[f.host.to_string()] = Json{{"isd", f.isd}, {"osd", f.osd}, {"spam", f.spam}};
    }
    groups.push_back(Json{{"window", window_json(g.window)},
                          {"path", to_string(g.path)},
                          {"hosts", hosts_json(g.hosts)},
                          {"evidence", Json{{"cluster_keys", keys}, {"activity", activity}}}});
  }

  Json windows = Json::array();
  for (const auto& w : report.windows) {
    windows.push_back(Json{{"window", window_json(w.window)},
                           {"malicious_hosts", hosts_json(w.malicious)},
                           {"p2p_clusters", w.p2p_clusters},
                           {"irc_clusters", w.irc_clusters}});
  }

  Json doc{{"config", config}, {"counters", counters}, {"groups", groups}, {"windows", windows}};
  return doc.dump(2) + "\n";
}

}  // namespace botwatch
