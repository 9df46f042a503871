#pragma once

#include <cstddef>
#include <span>

#include "beliefs/matrix.hpp"

namespace beliefs {

inline constexpr double kDefaultTolerance = 1e-9;
// Matrices typeset with three decimals only sum to one within this.
inline constexpr double kIngestTolerance = 1e-3;

// Row-stochastic matrix: nonnegative entries, every row sums to one within
// tol(). Immutable once constructed; obtain one through validate_stochastic,
// row_normalize, or the products below.
class StochMatrix {
 public:
  std::size_t rows() const noexcept { return m_.rows(); }
  std::size_t cols() const noexcept { return m_.cols(); }
  bool is_square() const noexcept { return m_.is_square(); }
  double tol() const noexcept { return tol_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  std::span<const double> row(std::size_t i) const noexcept { return m_.row(i); }
  const Matrix& matrix() const noexcept { return m_; }

  static StochMatrix identity(std::size_t n);

  friend bool operator==(const StochMatrix& a, const StochMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  StochMatrix(Matrix m, double tol) : m_(std::move(m)), tol_(tol) {}

  friend StochMatrix validate_stochastic(Matrix m, double tol);
  // Checks at ten times keep_tol, then carries keep_tol forward so repeated
  // products do not widen the tolerance.
  friend StochMatrix revalidate_product(Matrix m, double keep_tol);

  Matrix m_;
  double tol_;
};

// r x s matrix whose row j is person j's distribution over concepts.
class BeliefMatrix {
 public:
  explicit BeliefMatrix(StochMatrix m) : m_(std::move(m)) {}

  std::size_t people() const noexcept { return m_.rows(); }
  std::size_t concepts() const noexcept { return m_.cols(); }
  std::span<const double> belief(std::size_t person) const noexcept { return m_.row(person); }

  const StochMatrix& stoch() const noexcept { return m_; }
  const Matrix& matrix() const noexcept { return m_.matrix(); }

  friend bool operator==(const BeliefMatrix&, const BeliefMatrix&) = default;

 private:
  StochMatrix m_;
};

// Throws NegativeEntry(row,col) or RowSumOutOfTolerance(row,sum).
StochMatrix validate_stochastic(Matrix m, double tol = kDefaultTolerance);

// Validates at kIngestTolerance and then rescales every row to sum to one,
// so matrices printed with rounded decimals satisfy the tight invariant.
StochMatrix ingest_stochastic(const Matrix& m, double tol = kIngestTolerance);

// For results of stochastic arithmetic: validates at 10 * keep_tol and
// labels the result with keep_tol.
StochMatrix revalidate_product(Matrix m, double keep_tol);

// The result is revalidated at ten times the looser input tolerance.
StochMatrix multiply(const StochMatrix& a, const StochMatrix& b);
BeliefMatrix multiply(const StochMatrix& p, const BeliefMatrix& m);
BeliefMatrix multiply(const BeliefMatrix& m, const StochMatrix& h);

// p^n by repeated squaring; p^0 is the identity.
StochMatrix matrix_power(const StochMatrix& p, std::size_t n);

StochMatrix row_normalize(const Matrix& m);
Matrix col_normalize(const Matrix& m);

// max_j max_{i1,i2} |p_{i1 j} - p_{i2 j}|; zero exactly when all rows agree.
double delta_coefficient(const Matrix& p);
inline double delta_coefficient(const StochMatrix& p) { return delta_coefficient(p.matrix()); }

}  // namespace beliefs
