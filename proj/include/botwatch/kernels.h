#pragma once

// Data-parallel numeric kernels with a scalar reference and SIMD variants.
//
// Every backend produces bit-identical results: element-wise kernels use only
// correctly rounded IEEE operations, and reductions follow one canonical
// summation order (four interleaved partial sums, combined pairwise, then the
// tail in index order). The scalar backend spells that order out explicitly.

#include <cstddef>
#include <span>
#include <string_view>

namespace botwatch::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view to_string(Backend b);

/// True when the running CPU and the build support `b`.
bool available(Backend b);

/// Backend used by the dispatching entry points. Picked once from CPU
/// features; the BOTWATCH_KERNELS environment variable ("scalar", "avx2",
/// "neon") overrides when that backend is available.
Backend active();

/// Forces the active backend (tests and benchmarks). Returns false and leaves
/// the selection unchanged when `b` is unavailable.
bool set_active(Backend b);

/// Per-flow rate features over parallel arrays:
///   nbps[i] = nbytes[i] / max(duration_s[i], floor)
///   nbpp[i] = nbytes[i] / npkts[i]
/// All spans must have equal length; npkts must be non-zero.
struct FeatureBatch {
  std::span<const double> nbytes;
  std::span<const double> npkts;
  std::span<const double> duration_s;
  double duration_floor = 0.001;
};

void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp);

struct Deviation {
  double abs_sum = 0;  // sum of |a[i] - b[i]| in canonical order
  double max = 0;      // max(0, every element of both inputs)
};

/// Reduces two equal-length sample vectors to the quantities the curve
/// similarity score needs.
Deviation abs_deviation(std::span<const double> a, std::span<const double> b);

// Direct per-backend entry points, used by equivalence tests.
namespace scalar {
void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp);
Deviation abs_deviation(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp);
Deviation abs_deviation(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

namespace neon {
void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp);
Deviation abs_deviation(std::span<const double> a, std::span<const double> b);
}  // namespace neon

}  // namespace botwatch::kernels
