#include "beliefs/inhomogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "beliefs/chain_structure.hpp"
#include "beliefs/ergodic.hpp"
#include "beliefs/error.hpp"
#include "beliefs/homogeneous.hpp"
#include "beliefs/rng.hpp"

namespace beliefs {
namespace {

// Neumaier summation.
struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

SampledRun sample_trajectory(const MatrixFamily& sp, const MatrixFamily& sh,
                             const BeliefMatrix& m, std::uint64_t seed, std::size_t horizon,
                             double tol, bool keep_snapshots) {
  if (!sp.is_square() || sp.rows() != m.people() || !sh.is_square() ||
      sh.rows() != m.concepts()) {
    throw Error(ErrorCode::ShapeMismatch,
                "network family " + std::to_string(sp.rows()) + "x" + std::to_string(sp.cols()) +
                    ", concept family " + std::to_string(sh.rows()) + "x" +
                    std::to_string(sh.cols()) + ", beliefs " + std::to_string(m.people()) + "x" +
                    std::to_string(m.concepts()));
  }
  auto rp = rng::stream(seed, rng::kNetworkStream);
  auto rh = rng::stream(seed, rng::kConceptStream);

  SampledRun run{seed, horizon, {}, {}, m, std::nullopt, {}};
  run.word_p.reserve(horizon);
  run.word_h.reserve(horizon);
  if (keep_snapshots) run.snapshots.push_back(m);
  for (std::size_t t = 1; t <= horizon; ++t) {
    const std::size_t ip = rp.pick(sp.weights());
    const std::size_t ih = rh.pick(sh.weights());
    run.word_p.push_back(ip);
    run.word_h.push_back(ih);
    BeliefMatrix next = multiply(multiply(sp.member(ip), run.final_q), sh.member(ih));
    if (!run.stabilized_at && max_abs_diff(next.matrix(), run.final_q.matrix()) < tol) {
      run.stabilized_at = t;
    }
    run.final_q = std::move(next);
    if (keep_snapshots) run.snapshots.push_back(run.final_q);
  }
  return run;
}

const char* to_string(Convergence c) {
  return c == Convergence::AlmostSurelyRankOne ? "almost_surely_rank_one" : "not_rank_one";
}

ConvergenceDiagnosis diagnose_convergence(const MatrixFamily& family) {
  ConvergenceDiagnosis d{Convergence::NotRankOne, std::nullopt, one_leaf_connected(family), true};
  try {
    d.witness = exists_scrambling_product(family);
    d.verdict = d.witness ? Convergence::AlmostSurelyRankOne : Convergence::NotRankOne;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    d.decided_by_patterns = false;
    d.verdict = d.one_leaf ? Convergence::AlmostSurelyRankOne : Convergence::NotRankOne;
  }
  return d;
}

StochMatrix expectation_matrix(const MatrixFamily& family) {
  Matrix e(family.rows(), family.cols(), 0.0);
  double tol = 0.0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Matrix& a = family.member(k).matrix();
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t j = 0; j < e.cols(); ++j) e(i, j) += family.weight(k) * a(i, j);
    }
    tol = std::max(tol, family.member(k).tol());
  }
  return revalidate_product(std::move(e), tol);
}

BeliefMatrix expected_limit(const MatrixFamily& sp, const MatrixFamily& sh,
                            const BeliefMatrix& m) {
  return limit_q(expectation_matrix(sp), m, expectation_matrix(sh)).limit;
}

MonteCarloSummary monte_carlo(const MatrixFamily& sp, const MatrixFamily& sh,
                              const BeliefMatrix& m, std::uint64_t first_seed, std::size_t runs,
                              std::size_t horizon, std::size_t threads) {
  if (runs == 0) throw Error(ErrorCode::InvalidArgument, "at least one run required");
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, runs);

  std::vector<std::optional<BeliefMatrix>> finals(runs);
  std::vector<std::exception_ptr> failures(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < runs; r += threads) {
            finals[r] = sample_trajectory(sp, sh, m, first_seed + r, horizon).final_q;
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  const std::size_t r = m.people();
  const std::size_t s = m.concepts();
  std::vector<Compensated> sum(r * s);
  std::vector<Compensated> sum_sq(r * s);
  MonteCarloSummary out{runs, Matrix(r, s), Matrix(r, s), {}};
  out.final_delta.reserve(runs);
  for (const auto& q : finals) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        const double v = q->matrix()(i, j);
        sum[i * s + j].add(v);
        sum_sq[i * s + j].add(v * v);
      }
    }
    out.final_delta.push_back(delta_coefficient(q->matrix()));
  }
  const double n = double(runs);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const double mean = sum[i * s + j].value() / n;
      out.mean(i, j) = mean;
      if (runs > 1) {
        const double var = std::max(0.0, (sum_sq[i * s + j].value() - n * mean * mean) / (n - 1.0));
        out.standard_error(i, j) = std::sqrt(var / n);
      }
    }
  }
  return out;
}

}  // namespace beliefs
