#include <algorithm>
#include <cmath>

#include "botwatch/kernels.h"

namespace botwatch::kernels::scalar {

void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp) {
  const std::size_t n = in.nbytes.size();
  for (std::size_t i = 0; i < n; ++i) {
    nbps[i] = in.nbytes[i] / std::max(in.duration_s[i], in.duration_floor);
    nbpp[i] = in.nbytes[i] / in.npkts[i];
  }
}

Deviation abs_deviation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  double lane[4] = {0, 0, 0, 0};
  double peak = 0;
  for (std::size_t i = 0; i < blocked; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) {
      lane[j] += std::fabs(a[i + j] - b[i + j]);
      peak = std::max({peak, a[i + j], b[i + j]});
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (std::size_t i = blocked; i < n; ++i) {
    sum += std::fabs(a[i] - b[i]);
    peak = std::max({peak, a[i], b[i]});
  }
  return {sum, peak};
}

}  // namespace botwatch::kernels::scalar
