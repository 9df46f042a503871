#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance runner.

#include <cmath>
#include <limits>
#include <vector>

#include "beliefs/chain_structure.hpp"
#include "beliefs/kl_clusters.hpp"

namespace oracle {

using beliefs::PointCloud;
using beliefs::TransitionGraph;

// Subset encoded as a bitmask is closed when no member has an edge leaving it.
inline bool closed(const TransitionGraph& g, unsigned mask) {
  for (std::size_t i = 0; i < g.vertex_count; ++i) {
    if (!(mask >> i & 1u)) continue;
    for (std::size_t j : g.successors[i]) {
      if (!(mask >> j & 1u)) return false;
    }
  }
  return true;
}

// Number of minimal nonempty closed sets: the closed classes.
inline std::size_t brute_closed_classes(const TransitionGraph& g) {
  const unsigned full = (1u << g.vertex_count) - 1u;
  std::vector<unsigned> closed_sets;
  for (unsigned s = 1; s <= full; ++s) {
    if (closed(g, s)) closed_sets.push_back(s);
  }
  std::size_t minimal = 0;
  for (unsigned s : closed_sets) {
    bool is_min = true;
    for (unsigned t : closed_sets) {
      if (t != s && (t & s) == t) is_min = false;
    }
    minimal += is_min;
  }
  return minimal;
}

inline double kl_plain(const std::vector<double>& q, const std::vector<double>& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k)
    if (q[k] > 0) s += q[k] * std::log(q[k] / p[k]);
  return s;
}

inline std::vector<double> mix(const PointCloud& v, const double* free) {
  // free holds the first |v| - 1 weights; the last is the remainder.
  std::vector<double> out(v.front().size(), 0.0);
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    rest -= free[i];
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += free[i] * v[i][k];
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += rest * v.back()[k];
  return out;
}

inline bool feasible(const std::vector<double>& x, std::size_t from, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = from; i < from + count; ++i) {
    if (x[i] < 0.0) return false;
    s += x[i];
  }
  return s <= 1.0 + 1e-15;
}

// Brute force over barycentric grids: a 1/50 grid over both weight simplices,
// then repeated zooms around the best grid point.
inline double grid_oracle(const PointCloud& a, const PointCloud& b) {
  const std::size_t da = a.size() - 1;
  const std::size_t d = da + b.size() - 1;
  if (d == 0) return kl_plain(a[0], b[0]);
  std::vector<double> best(d, 0.0);
  double best_val = std::numeric_limits<double>::infinity();

  auto scan = [&](const std::vector<double>& lo, double step, std::size_t n) {
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d);
    while (true) {
      for (std::size_t i = 0; i < d; ++i) x[i] = lo[i] + step * double(idx[i]);
      if (feasible(x, 0, da) && feasible(x, da, d - da)) {
        const double v = kl_plain(mix(a, x.data()), mix(b, x.data() + da));
        if (v < best_val) {
          best_val = v;
          best = x;
        }
      }
      std::size_t i = 0;
      while (i < d && ++idx[i] > n) idx[i++] = 0;
      if (i == d) break;
    }
  };

  scan(std::vector<double>(d, 0.0), 1.0 / 50.0, 50);
  double step = 1.0 / 50.0;
  for (int level = 0; level < 18; ++level) {
    const double half = 2.0 * step;
    step = half / 5.0;
    std::vector<double> lo(d);
    for (std::size_t i = 0; i < d; ++i) lo[i] = best[i] - half;
    scan(lo, step, 10);
  }
  return best_val;
}

}  // namespace oracle
