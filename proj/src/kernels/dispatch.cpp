#include <atomic>
#include <cstdlib>
#include <string>

#include "botwatch/kernels.h"

namespace botwatch::kernels {
namespace {

Backend detect() {
  Backend best = Backend::kScalar;
  if (available(Backend::kAvx2)) best = Backend::kAvx2;
  if (available(Backend::kNeon)) best = Backend::kNeon;
  if (const char* env = std::getenv("BOTWATCH_KERNELS")) {
    const std::string want(env);
    for (Backend b : {Backend::kScalar, Backend::kAvx2, Backend::kNeon}) {
      if (want == to_string(b) && available(b)) return b;
    }
  }
  return best;
}

std::atomic<Backend>& selected() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "scalar";
}

bool available(Backend b) {
  switch (b) {
    case Backend::kScalar: return true;
    case Backend::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active() { return selected().load(std::memory_order_relaxed); }

bool set_active(Backend b) {
  if (!available(b)) return false;
  selected().store(b, std::memory_order_relaxed);
  return true;
}

void flow_features(const FeatureBatch& in, std::span<double> nbps, std::span<double> nbpp) {
  switch (active()) {
    case Backend::kAvx2: return avx2::flow_features(in, nbps, nbpp);
    case Backend::kNeon: return neon::flow_features(in, nbps, nbpp);
    case Backend::kScalar: break;
  }
  scalar::flow_features(in, nbps, nbpp);
}

Deviation abs_deviation(std::span<const double> a, std::span<const double> b) {
  switch (active()) {
    case Backend::kAvx2: return avx2::abs_deviation(a, b);
    case Backend::kNeon: return neon::abs_deviation(a, b);
    case Backend::kScalar: break;
  }
  return scalar::abs_deviation(a, b);
}

}  // namespace botwatch::kernels
