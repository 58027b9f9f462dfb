#include "botwatch/activity.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "botwatch/filter.h"

namespace botwatch {

FailedCounts count_failed(std::span<const FlowRecord> flows, const DetectorConfig& cfg) {
  FailedCounts fc;
  for (const auto& f : flows) {
    if (!is_failed_handshake(f)) continue;
    if (cfg.is_high_severity(f.proto, f.dport)) {
      ++fc.fhs;
    } else {
      ++fc.fls;
    }
  }
  return fc;
}

double isd_score(FailedCounts fc, double w1, double w2) {
  return w1 * static_cast<double>(fc.fhs) + w2 * static_cast<double>(fc.fls);
}

double osd_s2(FailedCounts fc, double w1, double w2, std::int64_t total_scans) {
  if (total_scans == 0) return 0.0;
  return isd_score(fc, w1, w2) / static_cast<double>(total_scans);
}

double entropy_norm(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  std::int64_t m = 0;
  for (auto c : counts) {
    if (c < 0) throw std::invalid_argument("negative target count");
    if (c > 0) {
      total += c;
      ++m;
    }
  }
  if (total == 0) throw AllZero();
  if (m == 1) return 0.0;

  double h = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return std::clamp(h / std::log(static_cast<double>(m)), 0.0, 1.0);
}

bool osd_vote(double s1, double s2, double s3, const DetectorConfig& cfg) {
  const int votes = (s1 >= cfg.osd_s1_threshold) + (s2 >= cfg.osd_s2_threshold) +
                    (s3 >= cfg.osd_s3_threshold);
  switch (cfg.osd_mode) {
    case VoteMode::kAnd: return votes == 3;
    case VoteMode::kOr: return votes >= 1;
    case VoteMode::kMajority: return votes >= 2;
  }
  return false;
}

ScanScores osd_scores(HostId host, std::span<const FlowRecord> outbound,
                      std::span<const FlowRecord> failed, const DetectorConfig& cfg) {
  ScanScores s;
  std::map<Ipv4, std::int64_t> targets;
  for (const auto& f : outbound) {
    if (f.sip != host) throw std::invalid_argument("outbound flow from another host");
    ++targets[f.dip];
  }
  s.C = static_cast<std::int64_t>(outbound.size());
  s.m = static_cast<std::int64_t>(targets.size());
  s.failed = count_failed(failed, cfg);
  if (s.C == 0) return s;

  std::vector<std::int64_t> counts;
  counts.reserve(targets.size());
  for (const auto& [dip, n] : targets) counts.push_back(n);

  s.s1 = static_cast<double>(s.m) / (cfg.window_seconds / 60.0);
  s.s2 = osd_s2(s.failed, cfg.w1, cfg.w2, s.C);
  s.s3 = entropy_norm(counts);
  s.flagged = s.C >= cfg.osd_min_scans && osd_vote(s.s1, s.s2, s.s3, cfg);
  return s;
}

SpamReport spam_detect(HostId host, std::span<const FlowRecord> flows, const DetectorConfig& cfg) {
  SpamReport r;
  r.host = host;
  std::set<Ipv4> servers;
  for (const auto& f : flows) {
    if (f.proto == Proto::kTcp && (f.dport == 25 || f.dport == 587)) {
      ++r.smtp_flows;
      servers.insert(f.dip);
    }
  }
  r.distinct_servers = static_cast<std::int64_t>(servers.size());
  r.flagged = r.distinct_servers >= cfg.spam_distinct_servers ||
              r.smtp_flows >= cfg.spam_total_flows;
  return r;
}

ActivityResult assess_activity(std::span<const FlowRecord> all_flows,
                               std::span<const FlowRecord> failed_flows,
                               const DetectorConfig& cfg, const Cidr& internal) {
  struct PerHost {
    std::vector<FlowRecord> outbound;
    std::vector<FlowRecord> outbound_failed;
    std::vector<FlowRecord> inbound_failed;
  };
  std::map<HostId, PerHost> hosts;
  for (const auto& f : all_flows) {
    if (internal.contains(f.sip)) hosts[f.sip].outbound.push_back(f);
  }
  for (const auto& f : failed_flows) {
    if (internal.contains(f.sip)) hosts[f.sip].outbound_failed.push_back(f);
    if (internal.contains(f.dip)) hosts[f.dip].inbound_failed.push_back(f);
  }

  ActivityResult out;
  out.hosts.reserve(hosts.size());
  for (const auto& [host, per] : hosts) {
    HostActivity a;
    a.host = host;
    a.osd = osd_scores(host, per.outbound, per.outbound_failed, cfg);
    a.osd_flagged = a.osd.flagged;
    a.osd.isd_S = isd_score(count_failed(per.inbound_failed, cfg), cfg.w1, cfg.w2);
    a.isd_flagged = !per.inbound_failed.empty() && a.osd.isd_S >= cfg.isd_threshold;
    a.spam = spam_detect(host, per.outbound, cfg);
    if (a.malicious()) out.malicious.push_back(host);
    out.hosts.push_back(std::move(a));
  }
  return out;
}

std::vector<HostId> malicious_hosts(std::span<const FlowRecord> all_flows,
                                    std::span<const FlowRecord> failed_flows,
                                    const DetectorConfig& cfg, const Cidr& internal) {
  return assess_activity(all_flows, failed_flows, cfg, internal).malicious;
}

}  // namespace botwatch
