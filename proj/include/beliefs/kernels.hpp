#pragma once

#include <cstddef>
#include <string_view>

// Inner-loop kernels with a scalar reference implementation and vector
// variants picked once at startup from what the CPU supports.
//
// axpy and max_abs_diff are elementwise (no reassociation), so every variant
// returns bit-identical results. dot, sum and min_overlap reorder the
// additions across lanes and agree with the scalar reference only to
// rounding.
namespace beliefs::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  // sum_i min(x[i], y[i])
  double (*min_overlap)(const double* x, const double* y, std::size_t n);
  // max_i |x[i] - y[i]|, 0 for n == 0
  double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
};

// Null when the variant was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa);

// The variant used by the library. Honors BELIEFS_SIMD=scalar|avx2|neon when
// that variant is available; otherwise the widest supported one.
const KernelTable& active();

}  // namespace beliefs::kernels
