#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "beliefs/family.hpp"
#include "beliefs/stochastic.hpp"

namespace beliefs {

struct SampledRun {
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  Word word_p;  // index drawn for P_t, t = 1..horizon
  Word word_h;
  BeliefMatrix final_q;
  // First t with max |Q_t - Q_{t-1}| < tol.
  std::optional<std::size_t> stabilized_at;
  std::vector<BeliefMatrix> snapshots;  // Q_0..Q_horizon when requested
};

// Q_t = P_t Q_{t-1} H_t with P_t, H_t drawn i.i.d. from the weighted
// families on separate streams of the seed.
SampledRun sample_trajectory(const MatrixFamily& sp, const MatrixFamily& sh,
                             const BeliefMatrix& m, std::uint64_t seed, std::size_t horizon,
                             double tol = kDefaultTolerance, bool keep_snapshots = false);

enum class Convergence { AlmostSurelyRankOne, NotRankOne };

const char* to_string(Convergence c);

struct ConvergenceDiagnosis {
  Convergence verdict;
  std::optional<Word> witness;  // scrambling word
  bool one_leaf = false;        // condensed union graph criterion
  // False when the pattern search ran out of budget and the verdict falls
  // back to the union-graph criterion.
  bool decided_by_patterns = true;
};

// A scrambling product exists iff i.i.d. products reach rank one almost
// surely. The union-graph criterion is reported alongside; it coincides
// whenever members have positive diagonals but not for periodic families.
ConvergenceDiagnosis diagnose_convergence(const MatrixFamily& family);

// sum_k w_k A_k.
StochMatrix expectation_matrix(const MatrixFamily& family);

// limit_q on the expectation matrices.
BeliefMatrix expected_limit(const MatrixFamily& sp, const MatrixFamily& sh,
                            const BeliefMatrix& m);

struct MonteCarloSummary {
  std::size_t runs = 0;
  Matrix mean;
  Matrix standard_error;  // sample sd / sqrt(runs)
  std::vector<double> final_delta;  // delta(final_q) per run, seed order
};

// Runs seeds first_seed .. first_seed + runs - 1 across `threads` workers
// and aggregates in seed order with compensated summation, so the result
// does not depend on the thread count.
MonteCarloSummary monte_carlo(const MatrixFamily& sp, const MatrixFamily& sh,
                              const BeliefMatrix& m, std::uint64_t first_seed, std::size_t runs,
                              std::size_t horizon, std::size_t threads = 0);

}  // namespace beliefs
