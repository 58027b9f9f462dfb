#include <algorithm>
#include <cmath>

#include "botwatch/kernels.h"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define BOTWATCH_HAVE_AVX2 1
#endif

namespace botwatch::kernels::avx2 {

#if BOTWATCH_HAVE_AVX2

__attribute__((target("avx2"))) void flow_features(const FeatureBatch& in,
                                                   std::span<double> nbps,
                                                   std::span<double> nbpp) {
  const std::size_t n = in.nbytes.size();
  const std::size_t blocked = n - n % 4;
  const __m256d floor = _mm256_set1_pd(in.duration_floor);
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d bytes = _mm256_loadu_pd(in.nbytes.data() + i);
    const __m256d pkts = _mm256_loadu_pd(in.npkts.data() + i);
    const __m256d dur = _mm256_max_pd(_mm256_loadu_pd(in.duration_s.data() + i), floor);
    _mm256_storeu_pd(nbps.data() + i, _mm256_div_pd(bytes, dur));
    _mm256_storeu_pd(nbpp.data() + i, _mm256_div_pd(bytes, pkts));
  }
  for (std::size_t i = blocked; i < n; ++i) {
    nbps[i] = in.nbytes[i] / std::max(in.duration_s[i], in.duration_floor);
    nbpp[i] = in.nbytes[i] / in.npkts[i];
  }
}

__attribute__((target("avx2"))) Deviation abs_deviation(std::span<const double> a,
                                                        std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  __m256d peak = _mm256_setzero_pd();
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d va = _mm256_loadu_pd(a.data() + i);
    const __m256d vb = _mm256_loadu_pd(b.data() + i);
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, _mm256_sub_pd(va, vb)));
    peak = _mm256_max_pd(peak, _mm256_max_pd(va, vb));
  }
  alignas(32) double lane[4];
  alignas(32) double lane_peak[4];
  _mm256_store_pd(lane, acc);
  _mm256_store_pd(lane_peak, peak);
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  double top = std::max({0.0, lane_peak[0], lane_peak[1], lane_peak[2], lane_peak[3]});
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

}  // namespace botwatch::kernels::avx2
