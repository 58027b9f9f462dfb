#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "botwatch/flow.h"

namespace botwatch {

class ZeroPackets : public std::invalid_argument {
 public:
  ZeroPackets() : std::invalid_argument("flow has zero packets") {}
};

class EmptyGroup : public std::invalid_argument {
 public:
  EmptyGroup() : std::invalid_argument("cannot build a curve from zero points") {}
};

class MismatchedR : public std::invalid_argument {
 public:
  MismatchedR() : std::invalid_argument("curves were built with different sample counts") {}
};

struct FlowFeatures {
  double nbps = 0;  // bytes per second
  double nbpp = 0;  // bytes per packet

  friend auto operator<=>(const FlowFeatures&, const FlowFeatures&) = default;
};

/// nbps = nbytes / max(duration, floor); nbpp = nbytes / npkts.
/// Throws ZeroPackets when npkts is 0.
FlowFeatures flow_features(const FlowRecord& rec, double duration_floor);

/// Batch form over the dispatched SIMD kernel. Bit-identical to calling
/// flow_features per record. Throws ZeroPackets if any record has no packets.
std::vector<FlowFeatures> flow_features(std::span<const FlowRecord> recs, double duration_floor);

/// Identifies one "database" of analogous flows. The P2P path keys on
/// (sip, dip, dport, proto); the IRC path additionally fixes the source port
/// and the packet-arrival-time bin.
struct GroupKey {
  HostId sip;
  Ipv4 dip;
  std::uint16_t dport = 0;
  Proto proto = Proto::kTcp;
  std::optional<std::uint16_t> sport;
  std::optional<std::int64_t> pat_bin;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;

  /// Comma-free text form, e.g. "10.0.0.5>93.10.1.2:6881/udp" or
  /// "10.0.0.5:43211>93.10.1.2:6667/tcp@28333440".
  std::string to_string() const;
};

struct FlowGroup {
  GroupKey key;
  std::vector<FlowFeatures> points;

  HostId member() const { return key.sip; }
};

/// Piecewise-linear nbps-over-nbpp curve sampled at R evenly spaced positions.
/// A degenerate curve (one distinct nbpp) is constant everywhere.
struct Curve {
  std::vector<double> xs;
  std::vector<double> ys;
  double x_min = 0;
  double x_max = 0;
  bool degenerate = false;

  std::size_t samples() const { return xs.size(); }
};

/// Sorts points by nbpp, averages nbps over equal nbpp values, and samples the
/// joined polyline at R positions across [min nbpp, max nbpp].
Curve build_curve(std::span<const FlowFeatures> points, int resample_points);

/// Similarity in [0,1] of two curves built with the same R.
///
/// Both curves are resampled at R even positions over the overlap of their
/// nbpp ranges (a degenerate curve spans every x). Disjoint ranges score 0.
/// With M the largest resampled value, the score is 1 - mean|ya - yb| / M,
/// or 1 when M is 0. Exactly symmetric.
double curve_similarity(const Curve& a, const Curve& b);

struct SimilarityCluster {
  std::vector<GroupKey> group_keys;  // ascending
  std::vector<HostId> hosts;         // ascending, unique
};

/// Single-linkage clustering: groups i and j are joined when their curves
/// score >= threshold; clusters are the connected components. Output order is
/// canonical and independent of the input order.
std::vector<SimilarityCluster> cluster_groups(std::vector<FlowGroup> groups, double threshold,
                                              int resample_points);

/// Groups sorted into canonical order (by key, then points).
void sort_groups(std::vector<FlowGroup>& groups);

/// Curve dump for external plotting: header `key,x,y`, R rows per curve
/// (one row for a degenerate curve).
std::string write_curves_csv(const std::vector<std::pair<std::string, Curve>>& curves);

}  // namespace botwatch
