#include "beliefs/matrix.hpp"

#include <cmath>
#include <string>

#include "beliefs/error.hpp"
#include "beliefs/kernels.hpp"

namespace beliefs {
namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix must have at least one row and column");
  }
}

void check_finite(const std::vector<double>& data) {
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!std::isfinite(data[k])) {
      throw Error(ErrorCode::InvalidArgument,
                  "non-finite entry at flat index " + std::to_string(k));
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  check_shape(rows, cols);
  check_finite(data_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_shape(rows, cols);
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(data_.size()));
  }
  check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_shape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

// Row-oriented i-k-j loop: each output row accumulates scaled rows of b, so
// the inner loop is a contiguous axpy and the summation order is fixed.
Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out = c.row(i).data();
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double s = a(i, l);
      if (s != 0.0) k.axpy(s, b.row(l).data(), out, b.cols());
    }
  }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff on differently shaped matrices");
  }
  return kernels::active().max_abs_diff(a.data().data(), b.data().data(), a.data().size());
}

}  // namespace beliefs
