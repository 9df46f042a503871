#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "beliefs/error.hpp"
#include "beliefs/stochastic.hpp"

namespace beliefs {

inline constexpr double kDefaultKlFloor = 1e-12;

// KL(p || q) in nats. With floor > 0 both vectors are clamped below at floor
// and renormalized first; with floor == 0 a zero q_k under positive p_k
// throws InfiniteDivergence.
double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double floor = kDefaultKlFloor);

// exp(-beta a_i) / sum_k exp(-beta a_k), shifted by min(a).
std::vector<double> softmax_weights(std::span<const double> divs, double beta);

using Divergence = std::function<double(std::span<const double>, std::span<const double>)>;

enum class StructureMode {
  Both,
  NetworkOnly,   // H_t = I
  ConceptsOnly,  // P_t = I
};

struct HomophilyConfig {
  double eps_p = 0.3;
  double eps_h = 0.25;
  double beta = 1.0;
  double floor = kDefaultKlFloor;
  double tol = 1e-9;
  std::size_t max_steps = 100;
  double group_tol = 1e-6;  // belief rows closer than this share a group
  StructureMode mode = StructureMode::Both;
  Divergence divergence;  // empty: kl_divergence with `floor`

  // Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

// Row i links to every j with D(m_i, m_j) < eps_p and weighs the links by a
// softmax over that subset.
StochMatrix build_network(const BeliefMatrix& m, const HomophilyConfig& cfg);
// Same rule on the columns of the column-normalized beliefs with eps_h.
StochMatrix build_concepts(const BeliefMatrix& m, const HomophilyConfig& cfg);

using Groups = std::vector<std::vector<std::size_t>>;

// Weakly connected components of the link graph, each sorted, listed by
// smallest member.
Groups link_groups(const StochMatrix& p);
// Rows equal within tol (transitively).
Groups belief_groups(const BeliefMatrix& q, double tol);

struct HomophilyStep {
  StochMatrix p;
  StochMatrix h;
  BeliefMatrix q;
};

struct HomophilyTrace {
  BeliefMatrix initial;
  std::vector<HomophilyStep> steps;  // steps[t-1] holds P_t, H_t, Q_t
  std::optional<std::size_t> stabilized_at;
  Groups final_groups;
  Groups belief_groups;

  const BeliefMatrix& final_q() const { return steps.empty() ? initial : steps.back().q; }
};

class StepLimitReached : public Error {
 public:
  explicit StepLimitReached(HomophilyTrace partial);
  const HomophilyTrace& trace() const noexcept { return trace_; }

 private:
  HomophilyTrace trace_;
};

// Q_t = P_t Q_{t-1} H_t with P_t, H_t built from Q_{t-1}; stops once
// max |Q_t - Q_{t-1}| < tol.
HomophilyTrace run_homophily(const BeliefMatrix& m0, const HomophilyConfig& cfg);

}  // namespace beliefs
