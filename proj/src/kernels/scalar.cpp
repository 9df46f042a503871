#include <algorithm>
#include <cmath>

#include "variants.hpp"

namespace beliefs::kernels::detail {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double min_overlap(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::min(x[i], y[i]);
  return acc;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::fabs(x[i] - y[i]));
  return best;
}

}  // namespace

const KernelTable kScalarTable{Isa::Scalar, axpy, dot, sum, min_overlap, max_abs_diff};

}  // namespace beliefs::kernels::detail
