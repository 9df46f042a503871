#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "variants.hpp"

namespace beliefs::kernels::detail {
namespace {

constexpr std::size_t kLanes = 2;

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

double sum(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += x[i];
  return out;
}

double min_overlap(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    acc = vaddq_f64(acc, vminq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += std::min(x[i], y[i]);
  return out;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    best = vmaxq_f64(best, vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
  }
  double out = vmaxvq_f64(best);
  for (; i < n; ++i) out = std::max(out, std::fabs(x[i] - y[i]));
  return out;
}

}  // namespace

const KernelTable kNeonTable{Isa::Neon, axpy, dot, sum, min_overlap, max_abs_diff};

}  // namespace beliefs::kernels::detail
