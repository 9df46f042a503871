#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "beliefs/kernels.hpp"

using namespace beliefs::kernels;

namespace {

std::vector<const KernelTable*> vector_tables() {
  std::vector<const KernelTable*> out;
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (const KernelTable* t = table_for(isa)) out.push_back(t);
  }
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("scalar table is always present and the active table is known") {
  REQUIRE(table_for(Isa::Scalar) != nullptr);
  const KernelTable& a = active();
  CHECK((a.isa == Isa::Scalar || table_for(a.isa) == &a));
  MESSAGE("active kernels: " << to_string(a.isa));
}

TEST_CASE("scalar reference values") {
  const KernelTable& s = *table_for(Isa::Scalar);
  const double x[] = {0.1, 0.4, 0.5};
  const double y[] = {0.3, 0.3, 0.4};
  CHECK(s.min_overlap(x, y, 3) == doctest::Approx(0.8));
  CHECK(s.max_abs_diff(x, y, 3) == doctest::Approx(0.2));
  CHECK(s.max_abs_diff(x, y, 0) == 0.0);
  CHECK(s.dot(x, y, 3) == doctest::Approx(0.03 + 0.12 + 0.2));
  CHECK(s.sum(x, 3) == doctest::Approx(1.0));
  double z[] = {1, 1, 1};
  s.axpy(2.0, x, z, 3);
  CHECK(z[2] == doctest::Approx(2.0));
}

TEST_CASE("vector variants match the scalar reference") {
  const KernelTable& ref = *table_for(Isa::Scalar);
  const auto tables = vector_tables();
  if (tables.empty()) MESSAGE("no vector variant available on this machine");
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const KernelTable* t : tables) {
    CAPTURE(to_string(t->isa));
    for (std::size_t n = 0; n <= 67; ++n) {
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
      }
      // Elementwise kernels: bit-identical.
      std::vector<double> y_ref = y;
      std::vector<double> y_vec = y;
      ref.axpy(0.37, x.data(), y_ref.data(), n);
      t->axpy(0.37, x.data(), y_vec.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(y_ref[i], y_vec[i]));
      CHECK(same_bits(ref.max_abs_diff(x.data(), y.data(), n), t->max_abs_diff(x.data(), y.data(), n)));

      // Reductions: equal up to reassociation.
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::fabs(x[i]) + std::fabs(y[i]);
      const double slack = 1e-14 * (scale + 1.0);
      CHECK(std::fabs(ref.dot(x.data(), y.data(), n) - t->dot(x.data(), y.data(), n)) <= slack);
      CHECK(std::fabs(ref.sum(x.data(), n) - t->sum(x.data(), n)) <= slack);
      CHECK(std::fabs(ref.min_overlap(x.data(), y.data(), n) - t->min_overlap(x.data(), y.data(), n)) <=
            slack);
    }
  }
}

TEST_CASE("exact decimals give exact overlaps on every variant") {
  const double a[] = {0.6, 0.4, 0.0};
  const double b[] = {0.0, 0.8, 0.2};
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (const KernelTable* t = table_for(isa)) CHECK(t->min_overlap(a, b, 3) == 0.4);
  }
}
