#include "beliefs/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "beliefs/chain_structure.hpp"
#include "beliefs/error.hpp"
#include "linalg.hpp"

namespace beliefs {
namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Stationary row of a chain with exactly one closed class.
std::vector<double> solve_stationary(const Matrix& p) {
  const std::size_t n = p.rows();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
  }
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = 1.0;
  std::vector<double> b(n, 0.0);
  b[n - 1] = 1.0;
  std::vector<double> pi = linalg::solve(std::move(a), std::move(b));
  for (double& v : pi) {
    if (v < 0.0 && v > -1e-12) v = 0.0;
  }
  const double s = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& v : pi) v /= s;
  return pi;
}

BeliefMatrix as_belief(Matrix m) {
  return BeliefMatrix(revalidate_product(std::move(m), kDefaultTolerance));
}

}  // namespace

EvolutionTrace evolve(const StochMatrix& p, const BeliefMatrix& m, const StochMatrix& h,
                      std::size_t steps, double tol) {
  if (!p.is_square() || p.rows() != m.people() || !h.is_square() || h.rows() != m.concepts()) {
    throw Error(ErrorCode::DimensionMismatch, "P " + shape(p.rows(), p.cols()) + ", M " +
                                                  shape(m.people(), m.concepts()) + ", H " +
                                                  shape(h.rows(), h.cols()));
  }
  EvolutionTrace trace;
  trace.horizon = steps;
  trace.snapshots.reserve(steps + 1);
  trace.snapshots.push_back(m);
  for (std::size_t n = 0; n < steps; ++n) {
    BeliefMatrix next = multiply(multiply(p, trace.snapshots.back()), h);
    if (!trace.stabilized_at &&
        max_abs_diff(next.matrix(), trace.snapshots.back().matrix()) < tol) {
      trace.stabilized_at = n;
    }
    trace.snapshots.push_back(std::move(next));
  }
  return trace;
}

std::vector<double> stationary_distribution(const StochMatrix& p) {
  const ChainStructure cs = analyze(p);
  if (!cs.is_indecomposable()) {
    throw Error(ErrorCode::NotIndecomposable,
                std::to_string(cs.condensation.leaf_classes.size()) + " closed classes");
  }
  if (!cs.is_aperiodic()) {
    throw Error(ErrorCode::NotAperiodic,
                "period " + std::to_string(cs.class_period(cs.condensation.leaf_classes[0])));
  }
  return solve_stationary(p.matrix());
}

std::vector<double> stationary_distribution_by_powers(const StochMatrix& p, double tol,
                                                      std::size_t max_iter) {
  const ChainStructure cs = analyze(p);
  if (!cs.is_indecomposable()) throw Error(ErrorCode::NotIndecomposable, "power iteration");
  if (!cs.is_aperiodic()) throw Error(ErrorCode::NotAperiodic, "power iteration");
  const std::size_t n = p.rows();
  std::vector<double> pi(n, 1.0 / double(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < max_iter; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * p(i, j);
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::fabs(next[j] - pi[j]));
    pi.swap(next);
    if (diff < tol) return pi;
  }
  throw Error(ErrorCode::NonConvergence, std::to_string(max_iter) + " iterations");
}

Matrix absorption_probabilities(const StochMatrix& p) {
  const ChainStructure cs = analyze(p);
  if (!cs.is_aperiodic()) throw Error(ErrorCode::NotAperiodic, "absorption probabilities");
  const auto& cond = cs.condensation;
  const std::size_t n = p.rows();
  const std::size_t leaves = cond.leaf_classes.size();

  std::vector<std::size_t> transient;
  for (std::size_t i = 0; i < n; ++i) {
    if (cs.states.kind[i] == StateKind::Transient) transient.push_back(i);
  }
  Matrix h(n, leaves, 0.0);
  for (std::size_t c = 0; c < leaves; ++c) {
    for (std::size_t i : cond.classes[cond.leaf_classes[c]]) h(i, c) = 1.0;
  }
  if (transient.empty()) return h;

  // (I - P_TT) x = P_TC 1 for each closed class C.
  const std::size_t t = transient.size();
  Matrix a(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      a(i, j) = (i == j ? 1.0 : 0.0) - p(transient[i], transient[j]);
    }
  }
  for (std::size_t c = 0; c < leaves; ++c) {
    std::vector<double> b(t, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j : cond.classes[cond.leaf_classes[c]]) b[i] += p(transient[i], j);
    }
    const std::vector<double> x = linalg::solve(a, std::move(b));
    for (std::size_t i = 0; i < t; ++i) h(transient[i], c) = std::max(0.0, x[i]);
  }
  return h;
}

StochMatrix limit_matrix(const StochMatrix& p) {
  const Matrix h = absorption_probabilities(p);
  const ChainStructure cs = analyze(p);
  const auto& cond = cs.condensation;
  const std::size_t n = p.rows();
  Matrix out(n, n, 0.0);
  for (std::size_t c = 0; c < cond.leaf_classes.size(); ++c) {
    const auto& members = cond.classes[cond.leaf_classes[c]];
    const std::vector<double> pi = solve_stationary(linalg::restrict(p.matrix(), members));
    for (std::size_t i = 0; i < n; ++i) {
      if (h(i, c) == 0.0) continue;
      for (std::size_t k = 0; k < members.size(); ++k) out(i, members[k]) += h(i, c) * pi[k];
    }
  }
  return row_normalize(out);
}

const char* to_string(LimitCase c) {
  switch (c) {
    case LimitCase::HIndecomposable: return "H_indecomposable";
    case LimitCase::PIndecomposable: return "P_indecomposable";
    case LimitCase::BothDecomposable: return "both_decomposable";
    case LimitCase::PeriodicCesaro: return "periodic_cesaro";
  }
  return "unknown";
}

LimitReport limit_q(const StochMatrix& p, const BeliefMatrix& m, const StochMatrix& h,
                    double tol) {
  if (!p.is_square() || p.rows() != m.people() || !h.is_square() || h.rows() != m.concepts()) {
    throw Error(ErrorCode::DimensionMismatch, "P " + shape(p.rows(), p.cols()) + ", M " +
                                                  shape(m.people(), m.concepts()) + ", H " +
                                                  shape(h.rows(), h.cols()));
  }
  const ChainStructure ap = analyze(p);
  const ChainStructure ah = analyze(h);

  std::size_t period = 1;
  for (const ChainStructure* cs : {&ap, &ah}) {
    for (std::size_t c : cs->condensation.leaf_classes) period = std::lcm(period, cs->class_period(c));
  }

  if (period == 1) {
    const Matrix lim = matmul(matmul(limit_matrix(p).matrix(), m.matrix()), limit_matrix(h).matrix());
    LimitCase kind = LimitCase::BothDecomposable;
    if (ah.is_indecomposable()) {
      kind = LimitCase::HIndecomposable;
    } else if (ap.is_indecomposable()) {
      kind = LimitCase::PIndecomposable;
    }
    BeliefMatrix limit = as_belief(lim);
    const bool homogeneous = delta_coefficient(limit.matrix()) < tol;
    return {std::move(limit), kind, homogeneous, 1};
  }

  // Q_{kL+r} = P^r (P^L)^k M (H^L)^k H^r; average the L residue limits.
  const Matrix a_inf = limit_matrix(matrix_power(p, period)).matrix();
  const Matrix b_inf = limit_matrix(matrix_power(h, period)).matrix();
  const Matrix core = matmul(matmul(a_inf, m.matrix()), b_inf);
  Matrix sum(m.people(), m.concepts(), 0.0);
  Matrix pr = Matrix::identity(p.rows());
  Matrix hr = Matrix::identity(h.rows());
  for (std::size_t r = 0; r < period; ++r) {
    const Matrix term = matmul(matmul(pr, core), hr);
    for (std::size_t i = 0; i < sum.rows(); ++i) {
      for (std::size_t j = 0; j < sum.cols(); ++j) sum(i, j) += term(i, j);
    }
    pr = matmul(pr, p.matrix());
    hr = matmul(hr, h.matrix());
  }
  for (std::size_t i = 0; i < sum.rows(); ++i) {
    for (double& v : sum.row(i)) v /= double(period);
  }
  BeliefMatrix limit = as_belief(sum);
  const bool homogeneous = delta_coefficient(limit.matrix()) < tol;
  return {std::move(limit), LimitCase::PeriodicCesaro, homogeneous, period};
}

}  // namespace beliefs
