#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "botwatch/config.h"
#include "botwatch/flow.h"

namespace botwatch {

class AllZero : public std::invalid_argument {
 public:
  AllZero() : std::invalid_argument("target counts sum to zero") {}
};

/// Failed connection attempts split by port severity.
struct FailedCounts {
  std::int64_t fhs = 0;
  std::int64_t fls = 0;

  std::int64_t total() const { return fhs + fls; }
};

/// Counts the failed-handshake flows in `flows` against cfg.hs_ports.
FailedCounts count_failed(std::span<const FlowRecord> flows, const DetectorConfig& cfg);

/// Inbound anomaly score S = w1*fhs + w2*fls.
double isd_score(FailedCounts fc, double w1, double w2);

/// Outbound failure score (w1*fhs + w2*fls) / C, or 0 when C is 0.
double osd_s2(FailedCounts fc, double w1, double w2, std::int64_t total_scans);

/// Normalized entropy H / ln(m) over the positive counts, natural logs.
/// A single target scores 0. Throws AllZero when every count is 0.
double entropy_norm(std::span<const std::int64_t> counts);

struct ScanScores {
  double isd_S = 0;
  double s1 = 0;  // distinct targets per minute of window
  double s2 = 0;
  double s3 = 0;
  std::int64_t C = 0;  // outbound connection attempts
  std::int64_t m = 0;  // distinct destination addresses
  FailedCounts failed;
  bool flagged = false;
};

/// Each detector votes when its score reaches its threshold; the mode
/// decides how many votes flag the host.
bool osd_vote(double s1, double s2, double s3, const DetectorConfig& cfg);

/// Outbound scores for one internal host. `outbound` holds every outbound
/// attempt by the host in one window, `failed` the failed subset.
ScanScores osd_scores(HostId host, std::span<const FlowRecord> outbound,
                      std::span<const FlowRecord> failed, const DetectorConfig& cfg);

struct SpamReport {
  HostId host;
  std::int64_t smtp_flows = 0;
  std::int64_t distinct_servers = 0;
  bool flagged = false;
};

/// Counts TCP flows to ports 25/587 and the distinct mail servers they reach.
SpamReport spam_detect(HostId host, std::span<const FlowRecord> flows, const DetectorConfig& cfg);

/// Everything the detector concluded about one internal host.
struct HostActivity {
  HostId host;
  ScanScores osd;  // osd.isd_S carries the inbound score
  bool isd_flagged = false;
  bool osd_flagged = false;
  SpamReport spam;

  bool malicious() const { return isd_flagged || osd_flagged || spam.flagged; }
};

struct ActivityResult {
  std::vector<HostActivity> hosts;  // ascending by host
  std::vector<HostId> malicious;    // ascending
};

/// Scores every internal host seen in one window. Direction comes from
/// `internal`: a flow is outbound for an internal sip and inbound for an
/// internal dip. Inbound failures are attributed to the targeted host.
ActivityResult assess_activity(std::span<const FlowRecord> all_flows,
                               std::span<const FlowRecord> failed_flows,
                               const DetectorConfig& cfg, const Cidr& internal);

std::vector<HostId> malicious_hosts(std::span<const FlowRecord> all_flows,
                                    std::span<const FlowRecord> failed_flows,
                                    const DetectorConfig& cfg, const Cidr& internal);

}  // namespace botwatch
