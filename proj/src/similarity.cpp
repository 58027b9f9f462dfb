#include "botwatch/similarity.h"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "botwatch/kernels.h"

namespace botwatch {
namespace {

// Evaluates the polyline through (xs, ys) at ascending positions. Positions
// outside [xs.front(), xs.back()] clamp to the end values.
void sample_polyline(std::span<const double> xs, std::span<const double> ys,
                     std::span<const double> at, std::span<double> out) {
  std::size_t seg = 0;
  const std::size_t last = xs.size() - 1;
  for (std::size_t k = 0; k < at.size(); ++k) {
    const double x = at[k];
    if (x <= xs.front()) {
      out[k] = ys.front();
      continue;
    }
    if (x >= xs.back()) {
      out[k] = ys.back();
      continue;
    }
    while (seg + 1 < last && xs[seg + 1] <= x) ++seg;
    const double x0 = xs[seg];
    const double x1 = xs[seg + 1];
    const double t = (x - x0) / (x1 - x0);
    out[k] = ys[seg] + (ys[seg + 1] - ys[seg]) * t;
  }
}

std::vector<double> even_positions(double lo, double hi, int count) {
  std::vector<double> xs(static_cast<std::size_t>(count));
  const double step = hi - lo;
  for (int k = 0; k < count; ++k) {
    xs[static_cast<std::size_t>(k)] = lo + step * k / (count - 1);
  }
  xs.back() = hi;
  return xs;
}

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void append_number(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, end);
}

}  // namespace

FlowFeatures flow_features(const FlowRecord& rec, double duration_floor) {
  if (rec.npkts == 0) throw ZeroPackets();
  const double bytes = static_cast<double>(rec.nbytes);
  return {bytes / std::max(to_seconds(rec.duration_us), duration_floor),
          bytes / static_cast<double>(rec.npkts)};
}

std::vector<FlowFeatures> flow_features(std::span<const FlowRecord> recs, double duration_floor) {
  const std::size_t n = recs.size();
  std::vector<double> bytes(n), pkts(n), dur(n), nbps(n), nbpp(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (recs[i].npkts == 0) throw ZeroPackets();
    bytes[i] = static_cast<double>(recs[i].nbytes);
    pkts[i] = static_cast<double>(recs[i].npkts);
    dur[i] = to_seconds(recs[i].duration_us);
  }
  kernels::flow_features({bytes, pkts, dur, duration_floor}, nbps, nbpp);
  std::vector<FlowFeatures> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {nbps[i], nbpp[i]};
  return out;
}

std::string GroupKey::to_string() const {
  std::string out = sip.to_string();
  if (sport) out += ':' + std::to_string(*sport);
  out += '>';
  out += dip.to_string();
  out += ':' + std::to_string(dport);
  out += '/';
  out += botwatch::to_string(proto);
  if (pat_bin) out += '@' + std::to_string(*pat_bin);
  return out;
}

Curve build_curve(std::span<const FlowFeatures> points, int resample_points) {
  if (points.empty()) throw EmptyGroup();
  if (resample_points < 2) throw std::invalid_argument("resample_points must be >= 2");

  std::vector<FlowFeatures> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const FlowFeatures& a, const FlowFeatures& b) {
    return a.nbpp != b.nbpp ? a.nbpp < b.nbpp : a.nbps < b.nbps;
  });

  std::vector<double> px, py;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    double sum = 0;
    while (j < sorted.size() && sorted[j].nbpp == sorted[i].nbpp) sum += sorted[j++].nbps;
    px.push_back(sorted[i].nbpp);
    py.push_back(sum / static_cast<double>(j - i));
    i = j;
  }

  const auto r = static_cast<std::size_t>(resample_points);
  Curve c;
  c.x_min = px.front();
  c.x_max = px.back();
  if (px.size() == 1) {
    c.degenerate = true;
    c.xs.assign(r, px.front());
    c.ys.assign(r, py.front());
    return c;
  }
  c.xs = even_positions(c.x_min, c.x_max, resample_points);
  c.ys.resize(r);
  sample_polyline(px, py, c.xs, c.ys);
  return c;
}

double curve_similarity(const Curve& a, const Curve& b) {
  if (a.samples() != b.samples()) throw MismatchedR();
  const std::size_t r = a.samples();
  if (r < 2) throw std::invalid_argument("curve has fewer than two samples");

  std::vector<double> ya(r), yb(r);
  if (a.degenerate && b.degenerate) {
    std::fill(ya.begin(), ya.end(), a.ys.front());
    std::fill(yb.begin(), yb.end(), b.ys.front());
  } else {
    double lo = 0, hi = 0;
    if (a.degenerate) {
      lo = b.x_min;
      hi = b.x_max;
    } else if (b.degenerate) {
      lo = a.x_min;
      hi = a.x_max;
    } else {
      lo = std::max(a.x_min, b.x_min);
      hi = std::min(a.x_max, b.x_max);
      if (hi < lo) return 0.0;
    }
    const auto at = even_positions(lo, hi, static_cast<int>(r));
    auto eval = [&](const Curve& c, std::span<double> out) {
      if (c.degenerate) {
        std::fill(out.begin(), out.end(), c.ys.front());
      } else {
        sample_polyline(c.xs, c.ys, at, out);
      }
    };
    eval(a, ya);
    eval(b, yb);
  }

  const auto dev = kernels::abs_deviation(ya, yb);
  if (dev.max == 0) return 1.0;
  const double score = 1.0 - (dev.abs_sum / static_cast<double>(r)) / dev.max;
  return std::clamp(score, 0.0, 1.0);
}

void sort_groups(std::vector<FlowGroup>& groups) {
  std::sort(groups.begin(), groups.end(), [](const FlowGroup& a, const FlowGroup& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.points < b.points;
  });
}

std::vector<SimilarityCluster> cluster_groups(std::vector<FlowGroup> groups, double threshold,
                                              int resample_points) {
  sort_groups(groups);
  const std::size_t n = groups.size();
  std::vector<Curve> curves;
  curves.reserve(n);
  for (const auto& g : groups) curves.push_back(build_curve(g.points, resample_points));

  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sets.find(i) == sets.find(j)) continue;
      if (curve_similarity(curves[i], curves[j]) >= threshold) sets.join(i, j);
    }
  }

  // Roots are the smallest index in each component, so visiting indices in
  // order yields clusters ordered by their smallest key.
  std::vector<SimilarityCluster> clusters;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (slot[root] == n) {
      slot[root] = clusters.size();
      clusters.emplace_back();
    }
    auto& c = clusters[slot[root]];
    if (c.group_keys.empty() || c.group_keys.back() != groups[i].key) {
      c.group_keys.push_back(groups[i].key);
    }
    c.hosts.push_back(groups[i].member());
  }
  for (auto& c : clusters) {
    std::sort(c.hosts.begin(), c.hosts.end());
    c.hosts.erase(std::unique(c.hosts.begin(), c.hosts.end()), c.hosts.end());
  }
  std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
    if (a.hosts.front() != b.hosts.front()) return a.hosts.front() < b.hosts.front();
    return a.group_keys.front() < b.group_keys.front();
  });
  return clusters;
}

std::string write_curves_csv(const std::vector<std::pair<std::string, Curve>>& curves) {
  std::string out = "key,x,y\n";
  for (const auto& [key, curve] : curves) {
    const std::size_t rows = curve.degenerate ? 1 : curve.samples();
    for (std::size_t i = 0; i < rows; ++i) {
      out += key;
      out += ',';
      append_number(out, curve.xs[i]);
      out += ',';
      append_number(out, curve.ys[i]);
      out += '\n';
    }
  }
  return out;
}

}  // namespace botwatch
