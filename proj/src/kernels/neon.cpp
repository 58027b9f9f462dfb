#include <algorithm>
#include <cmath>

#include "botwatch/kernels.h"

#if defined(__aarch64__)
#include <arm_neon.h>
#define BOTWATCH_HAVE_NEON 1
#endif

namespace botwatch::kernels::neon {

#if BOTWATCH_HAVE_NEON

void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp) {
  const std::size_t n = in.nbytes.size();
  const std::size_t blocked = n - n % 2;
  const float64x2_t floor = vdupq_n_f64(in.duration_floor);
  for (std::size_t i = 0; i < blocked; i += 2) {
    const float64x2_t bytes = vld1q_f64(in.nbytes.data() + i);
    const float64x2_t pkts = vld1q_f64(in.npkts.data() + i);
    const float64x2_t dur = vmaxq_f64(vld1q_f64(in.duration_s.data() + i), floor);
    vst1q_f64(nbps.data() + i, vdivq_f64(bytes, dur));
    vst1q_f64(nbpp.data() + i, vdivq_f64(bytes, pkts));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    nbps[i] = in.nbytes[i] / std::max(in.duration_s[i], in.duration_floor);
    nbpp[i] = in.nbytes[i] / in.npkts[i];
  }
}

Deviation abs_deviation(std::span<const double> a, std::span<const double> b) {
  // Two 2-lane accumulators reproduce the canonical four-lane order.
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  float64x2_t acc_lo = vdupq_n_f64(0.0);
  float64x2_t acc_hi = vdupq_n_f64(0.0);
  float64x2_t peak = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < blocked; i += 4) {
    const float64x2_t a_lo = vld1q_f64(a.data() + i);
    const float64x2_t a_hi = vld1q_f64(a.data() + i + 2);
    const float64x2_t b_lo = vld1q_f64(b.data() + i);
    const float64x2_t b_hi = vld1q_f64(b.data() + i + 2);
    acc_lo = vaddq_f64(acc_lo, vabdq_f64(a_lo, b_lo));
    acc_hi = vaddq_f64(acc_hi, vabdq_f64(a_hi, b_hi));
    peak = vmaxq_f64(peak, vmaxq_f64(vmaxq_f64(a_lo, b_lo), vmaxq_f64(a_hi, b_hi)));
  }
  double sum = (vgetq_lane_f64(acc_lo, 0) + vgetq_lane_f64(acc_lo, 1)) +
               (vgetq_lane_f64(acc_hi, 0) + vgetq_lane_f64(acc_hi, 1));
  double top = std::max({0.0, vgetq_lane_f64(peak, 0), vgetq_lane_f64(peak, 1)});
  for (std::size_t i = blocked; i < n; ++i) {
    sum += std::fabs(a[i] - b[i]);
    top = std::max({top, a[i], b[i]});
  }
  return {sum, top};
}

#else

void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp) {
  scalar::flow_features(in, nbps, nbpp);
}

Deviation abs_deviation(std::span<const double> a, std::span<const double> b) {
  return scalar::abs_deviation(a, b);
}

#endif

}  // namespace botwatch::kernels::neon
