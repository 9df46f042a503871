#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "beliefs/stochastic.hpp"

namespace beliefs {

struct EvolutionTrace {
  std::size_t horizon = 0;
  std::vector<BeliefMatrix> snapshots;  // Q_0 .. Q_horizon
  // First n with max |Q_{n+1} - Q_n| < tol.
  std::optional<std::size_t> stabilized_at;

  const BeliefMatrix& final_q() const { return snapshots.back(); }
};

// Q_n = P^n M H^n for n = 0..steps, computed as Q_{n+1} = P Q_n H.
EvolutionTrace evolve(const StochMatrix& p, const BeliefMatrix& m, const StochMatrix& h,
                      std::size_t steps, double tol = kDefaultTolerance);

// Solves pi (P - I) = 0 with sum(pi) = 1 directly.
std::vector<double> stationary_distribution(const StochMatrix& p);
// Same distribution by iterating pi <- pi P from uniform.
std::vector<double> stationary_distribution_by_powers(const StochMatrix& p,
                                                      double tol = 1e-13,
                                                      std::size_t max_iter = 100000);

// n x L matrix: entry (i, c) is the probability that the chain started at i
// is absorbed into the c-th closed class (classes in the order
// analyze(p).condensation.leaf_classes).
Matrix absorption_probabilities(const StochMatrix& p);

// lim P^n = sum_C h^C pi^C for an aperiodic chain.
StochMatrix limit_matrix(const StochMatrix& p);

enum class LimitCase { HIndecomposable, PIndecomposable, BothDecomposable, PeriodicCesaro };

const char* to_string(LimitCase c);

struct LimitReport {
  BeliefMatrix limit;
  LimitCase kind;
  bool homogeneous;            // delta(limit) < tol
  std::size_t cesaro_period;   // averaging window; 1 unless periodic
};

// Closed-form lim P^n M H^n. Periodic recurrent classes on either side give
// the time average over one joint period instead.
LimitReport limit_q(const StochMatrix& p, const BeliefMatrix& m, const StochMatrix& h,
                    double tol = kDefaultTolerance);

}  // namespace beliefs
