#pragma once

#include <complex>
#include <vector>

#include "beliefs/matrix.hpp"

// Small dense solvers shared by the analysis modules. Not part of the
// public headers.
namespace beliefs::linalg {

inline constexpr double kPivotFloor = 1e-12;

// Solves a x = b by LU with partial pivoting. Throws SingularSystem when the
// largest available pivot falls below kPivotFloor.
std::vector<double> solve(Matrix a, std::vector<double> b);

std::vector<std::complex<double>> eigenvalues(const Matrix& a);

// Square submatrix on the given index set.
Matrix restrict(const Matrix& a, const std::vector<std::size_t>& idx);

}  // namespace beliefs::linalg
