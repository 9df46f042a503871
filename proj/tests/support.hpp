#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "beliefs/csv.hpp"
#include "beliefs/stochastic.hpp"

namespace support {

inline std::filesystem::path fixture(const std::string& rel) {
  return std::filesystem::path(FIXTURE_DIR) / rel;
}

inline beliefs::StochMatrix load(const std::string& rel) {
  return beliefs::ingest_stochastic(beliefs::csv::read(fixture(rel)));
}

inline beliefs::BeliefMatrix load_beliefs(const std::string& rel) {
  return beliefs::BeliefMatrix(load(rel));
}

inline beliefs::StochMatrix stoch(std::initializer_list<std::initializer_list<double>> rows) {
  return beliefs::validate_stochastic(beliefs::Matrix(rows));
}

// Naive triple loop, no kernels.
inline beliefs::Matrix naive_mul(const beliefs::Matrix& a, const beliefs::Matrix& b) {
  beliefs::Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      long double s = 0.0L;
      for (std::size_t k = 0; k < a.cols(); ++k) s += (long double)a(i, k) * b(k, j);
      c(i, j) = double(s);
    }
  return c;
}

inline beliefs::Matrix naive_power(const beliefs::Matrix& a, std::size_t n) {
  beliefs::Matrix r = beliefs::Matrix::identity(a.rows());
  for (std::size_t k = 0; k < n; ++k) r = naive_mul(r, a);
  return r;
}

// Random row-stochastic matrix; each entry is zeroed with probability
// zero_prob (the diagonal is kept positive when keep_diag is set).
inline beliefs::StochMatrix random_stochastic(std::mt19937_64& rng, std::size_t r, std::size_t c,
                                              double zero_prob = 0.0, bool keep_diag = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  beliefs::Matrix m(r, c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      const bool forced = keep_diag && i == j;
      m(i, j) = (forced || u(rng) >= zero_prob) ? u(rng) + 1e-3 : 0.0;
      s += m(i, j);
    }
    if (s == 0.0) {
      m(i, i % c) = 1.0;
      s = 1.0;
    }
    for (std::size_t j = 0; j < c; ++j) m(i, j) /= s;
  }
  return beliefs::row_normalize(m);
}

// Flat Dirichlet(1,...,1) draw.
inline std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t s) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> v(s);
  double t = 0.0;
  for (double& x : v) {
    x = g(rng) + 1e-9;
    t += x;
  }
  for (double& x : v) x /= t;
  return v;
}

inline double max_diff(const beliefs::Matrix& a, const beliefs::Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::fabs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace support
