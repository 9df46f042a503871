#include "beliefs/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "beliefs/error.hpp"
#include "beliefs/kernels.hpp"

namespace beliefs {
namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

StochMatrix StochMatrix::identity(std::size_t n) {
  return validate_stochastic(Matrix::identity(n));
}

StochMatrix validate_stochastic(Matrix m, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < 0.0) {
        throw Error(ErrorCode::NegativeEntry, "entry (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") = " + fmt_double(m(i, j)));
      }
    }
    const double s = k.sum(m.row(i).data(), m.cols());
    // A few ulps of slack so a row of decimals summing to exactly 1 + tol
    // is not rejected for its binary rounding.
    if (std::fabs(s - 1.0) > tol + 8.0 * std::numeric_limits<double>::epsilon()) {
      throw Error(ErrorCode::RowSumOutOfTolerance,
                  "row " + std::to_string(i) + " sums to " + fmt_double(s));
    }
  }
  return StochMatrix(std::move(m), tol);
}

StochMatrix revalidate_product(Matrix m, double keep_tol) {
  StochMatrix checked = validate_stochastic(std::move(m), 10.0 * keep_tol);
  checked.tol_ = keep_tol;
  return checked;
}

StochMatrix ingest_stochastic(const Matrix& m, double tol) {
  validate_stochastic(m, tol);
  return row_normalize(m);
}

StochMatrix multiply(const StochMatrix& a, const StochMatrix& b) {
  Matrix c = matmul(a.matrix(), b.matrix());
  return revalidate_product(std::move(c), std::max(a.tol(), b.tol()));
}

BeliefMatrix multiply(const StochMatrix& p, const BeliefMatrix& m) {
  return BeliefMatrix(multiply(p, m.stoch()));
}

BeliefMatrix multiply(const BeliefMatrix& m, const StochMatrix& h) {
  return BeliefMatrix(multiply(m.stoch(), h));
}

StochMatrix matrix_power(const StochMatrix& p, std::size_t n) {
  if (!p.is_square()) {
    throw Error(ErrorCode::NotSquare, std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
  }
  Matrix result = Matrix::identity(p.rows());
  Matrix base = p.matrix();
  bool first = true;
  while (n > 0) {
    if (n & 1U) {
      result = first ? base : matmul(result, base);
      first = false;
    }
    n >>= 1U;
    if (n > 0) base = matmul(base, base);
  }
  return revalidate_product(std::move(result), p.tol());
}

StochMatrix row_normalize(const Matrix& m) {
  const auto& k = kernels::active();
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double s = k.sum(m.row(i).data(), m.cols());
    if (s == 0.0) throw Error(ErrorCode::ZeroRow, "row " + std::to_string(i));
    for (double& v : out.row(i)) v /= s;
  }
  return validate_stochastic(std::move(out));
}

Matrix col_normalize(const Matrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += m(i, j);
  }
  Matrix out = m;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (sums[j] == 0.0) throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j));
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) /= sums[j];
  }
  return out;
}

double delta_coefficient(const Matrix& p) {
  const auto& k = kernels::active();
  double best = 0.0;
  for (std::size_t a = 0; a < p.rows(); ++a) {
    for (std::size_t b = a + 1; b < p.rows(); ++b) {
      best = std::max(best, k.max_abs_diff(p.row(a).data(), p.row(b).data(), p.cols()));
    }
  }
  return best;
}

}  // namespace beliefs
