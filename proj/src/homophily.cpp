#include "beliefs/homophily.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "beliefs/chain_structure.hpp"

namespace beliefs {
namespace {

void check_distribution(std::span<const double> v, const char* name) {
  double s = 0.0;
  for (double x : v) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, std::string(name) + " has a negative entry");
    s += x;
  }
  if (std::fabs(s - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " sums to " + std::to_string(s));
  }
}

std::vector<double> floored(std::span<const double> v, double floor) {
  std::vector<double> out(v.begin(), v.end());
  double s = 0.0;
  for (double& x : out) {
    x = std::max(x, floor);
    s += x;
  }
  for (double& x : out) x /= s;
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  Groups groups() {
    Groups out;
    std::vector<std::size_t> slot(parent_.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      const std::size_t r = find(i);
      if (slot[r] == std::numeric_limits<std::size_t>::max()) {
        slot[r] = out.size();
        out.emplace_back();
      }
      out[slot[r]].push_back(i);
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

// points: one distribution per row.
StochMatrix link_matrix(const Matrix& points, double eps, const HomophilyConfig& cfg) {
  const std::size_t n = points.rows();
  Matrix out(n, n, 0.0);
  std::vector<std::size_t> linked;
  std::vector<double> divs;
  for (std::size_t i = 0; i < n; ++i) {
    linked.clear();
    divs.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = cfg.divergence ? cfg.divergence(points.row(i), points.row(j))
                                      : kl_divergence(points.row(i), points.row(j), cfg.floor);
      if (d < eps) {
        linked.push_back(j);
        divs.push_back(d);
      }
    }
    const std::vector<double> w = softmax_weights(divs, cfg.beta);
    for (std::size_t k = 0; k < linked.size(); ++k) out(i, linked[k]) = w[k];
  }
  return row_normalize(out);
}

}  // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q, double floor) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  }
  if (!(floor >= 0.0)) throw Error(ErrorCode::InvalidArgument, "floor must be nonnegative");
  check_distribution(p, "p");
  check_distribution(q, "q");
  std::vector<double> pf;
  std::vector<double> qf;
  if (floor > 0.0) {
    pf = floored(p, floor);
    qf = floored(q, floor);
    p = pf;
    q = qf;
  }
  double d = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) throw Error(ErrorCode::InfiniteDivergence, "q is zero at " + std::to_string(k));
    d += p[k] * std::log(p[k] / q[k]);
  }
  return std::max(d, 0.0);
}

std::vector<double> softmax_weights(std::span<const double> divs, double beta) {
  if (divs.empty()) throw Error(ErrorCode::EmptySubset, "softmax over nothing");
  if (!(beta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be nonnegative");
  const double lo = *std::min_element(divs.begin(), divs.end());
  std::vector<double> w(divs.size());
  double s = 0.0;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    w[i] = std::exp(-beta * (divs[i] - lo));
    s += w[i];
  }
  for (double& x : w) x /= s;
  return w;
}

void HomophilyConfig::validate() const {
  if (!(eps_p > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_p must be positive");
  if (!(eps_h > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_h must be positive");
  if (!(beta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be nonnegative");
  if (!(floor >= 0.0)) throw Error(ErrorCode::InvalidArgument, "floor must be nonnegative");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_steps < 1) throw Error(ErrorCode::InvalidArgument, "max_steps must be at least 1");
  if (!(group_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "group_tol must be nonnegative");
}

StochMatrix build_network(const BeliefMatrix& m, const HomophilyConfig& cfg) {
  return link_matrix(m.matrix(), cfg.eps_p, cfg);
}

StochMatrix build_concepts(const BeliefMatrix& m, const HomophilyConfig& cfg) {
  return link_matrix(col_normalize(m.matrix()).transposed(), cfg.eps_h, cfg);
}

Groups link_groups(const StochMatrix& p) {
  const TransitionGraph g = graph_of(p);
  UnionFind uf(g.vertex_count);
  for (auto [i, j] : g.edges()) uf.unite(i, j);
  return uf.groups();
}

Groups belief_groups(const BeliefMatrix& q, double tol) {
  UnionFind uf(q.people());
  for (std::size_t i = 0; i < q.people(); ++i) {
    for (std::size_t j = i + 1; j < q.people(); ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < q.concepts(); ++k) {
        d = std::max(d, std::fabs(q.belief(i)[k] - q.belief(j)[k]));
      }
      if (d <= tol) uf.unite(i, j);
    }
  }
  return uf.groups();
}

StepLimitReached::StepLimitReached(HomophilyTrace partial)
    : Error(ErrorCode::StepLimitReached,
            "no stabilization within " + std::to_string(partial.steps.size()) + " steps"),
      trace_(std::move(partial)) {}

HomophilyTrace run_homophily(const BeliefMatrix& m0, const HomophilyConfig& cfg) {
  cfg.validate();
  HomophilyTrace trace{m0, {}, std::nullopt, {}, {}};
  for (std::size_t t = 1; t <= cfg.max_steps; ++t) {
    const BeliefMatrix& prev = trace.final_q();
    StochMatrix p = cfg.mode == StructureMode::ConceptsOnly ? StochMatrix::identity(prev.people())
                                                            : build_network(prev, cfg);
    StochMatrix h = cfg.mode == StructureMode::NetworkOnly ? StochMatrix::identity(prev.concepts())
                                                           : build_concepts(prev, cfg);
    BeliefMatrix q = multiply(multiply(p, prev), h);
    const double change = max_abs_diff(q.matrix(), prev.matrix());
    trace.steps.push_back({std::move(p), std::move(h), std::move(q)});
    if (change < cfg.tol) {
      trace.stabilized_at = t;
      break;
    }
  }
  const BeliefMatrix& last = trace.final_q();
  trace.final_groups = trace.steps.empty() ? Groups{} : link_groups(trace.steps.back().p);
  trace.belief_groups = belief_groups(last, cfg.group_tol);
  if (!trace.stabilized_at) throw StepLimitReached(std::move(trace));
  return trace;
}

}  // namespace beliefs
