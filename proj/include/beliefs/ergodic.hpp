#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "beliefs/family.hpp"
#include "beliefs/stochastic.hpp"

namespace beliefs {

// gamma(P) = min over row pairs of sum_j min(p_i1j, p_i2j).
double ergodic_coefficient(const StochMatrix& p);
// 1 - gamma(P).
double scrambling_lambda(const StochMatrix& p);
bool is_scrambling(const StochMatrix& p);

// Indecomposable and aperiodic.
bool is_sia(const StochMatrix& p);

// Boolean positivity patterns are explored for N <= kMaxPatternDim.
inline constexpr std::size_t kMaxPatternDim = 12;
inline constexpr std::size_t kDefaultPatternBudget = 200000;

struct SiaVerdict {
  bool all_sia = true;
  std::optional<Word> counterexample;  // shortest word whose product is not SIA
  std::size_t pattern_count = 0;       // distinct patterns visited
};

// Decides on positivity patterns whether every finite product of members is
// SIA. Throws BudgetExceeded when the pattern semigroup outgrows `budget`.
SiaVerdict all_products_sia(const MatrixFamily& family,
                            std::size_t budget = kDefaultPatternBudget);

// Shortest word (lexicographically first among the shortest) whose product
// is scrambling, if any product is.
std::optional<Word> exists_scrambling_product(const MatrixFamily& family,
                                              std::size_t budget = kDefaultPatternBudget);

// Largest eigenvalue modulus after removing the unit eigenvalue. NotSIA
// unless p is indecomposable and aperiodic.
double subdominant_modulus(const StochMatrix& p);
// Independent estimate from powers of P - 1*pi; agrees with
// subdominant_modulus to about 1e-3 (slower when eigenvalues are defective).
double subdominant_modulus_by_powers(const StochMatrix& p, std::size_t squarings = 12);

// (3^N - 2^(N+1) + 1) / 2. Exact for N <= 40.
std::uint64_t nu_star(std::size_t n);

enum class CertificateKind { Homogeneous, Inhomogeneous };

struct RateCertificate {
  CertificateKind kind = CertificateKind::Homogeneous;
  double base = 0.0;      // contraction per block
  std::size_t block = 1;  // steps per block
  std::optional<double> constant_hint;
  bool constant_is_fitted = false;  // false when the constant is proven
  std::optional<Word> witness_word;

  // Homogeneous: slowest per-class subdominant moduli of P and H.
  std::vector<double> factor_bases;
  // Homogeneous: spectral radius of the transient block of P, 0 without
  // transient states. Reported, not folded into base.
  double transient_decay = 0.0;
  // Inhomogeneous: worst-case block bound for the dimension.
  std::optional<std::uint64_t> nu_star;

  // constant * base^floor(n / block); the constant defaults to 1.
  double bound(std::size_t n) const;
};

// base = lambda_P * lambda_H. Decomposable inputs use the slowest closed
// class on each side. The constant is fitted as max_{n <= fit_horizon}
// err_n / base^n on a probe run, err_n = max |Q_n - lim Q|; the probe
// belief matrix defaults to rows cycling through the unit vectors.
RateCertificate homogeneous_rate_certificate(const StochMatrix& p, const StochMatrix& h,
                                             const std::optional<BeliefMatrix>& probe = {},
                                             std::size_t fit_horizon = 20);

// Anthonisse-Tijms style bound (1 - gamma)^floor(n / nu) with constant 1.
// With nu absent, nu is the smallest length whose every pattern word is
// scrambling. gamma is minimized over the real products of all length-nu
// words. Throws NotConvergentFamily unless every product is SIA.
RateCertificate inhomogeneous_rate_certificate(const MatrixFamily& family,
                                               std::optional<std::size_t> nu = {},
                                               std::size_t budget = kDefaultPatternBudget);

}  // namespace beliefs
