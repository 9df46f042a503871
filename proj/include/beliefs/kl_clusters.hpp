#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "beliefs/homophily.hpp"

namespace beliefs {

// Points on the probability simplex, all of one length.
using PointCloud = std::vector<std::vector<double>>;

inline constexpr double kDefaultHullTol = 1e-6;
inline constexpr std::size_t kFrankWolfeCap = 10000;

struct HullDistance {
  double value = 0.0;
  std::vector<double> weights_a;  // convex weights on the first hull
  std::vector<double> weights_b;
  double gap = 0.0;               // final duality gap, value - optimum <= gap
  std::size_t iterations = 0;
};

// min over q in Conv(a), p in Conv(b) of KL(q || p). Vertices are floored and
// renormalized like kl_divergence. KL is jointly convex, so block
// Frank-Wolfe with away steps over both weight simplices reaches the global
// minimum; it stops when the duality gap drops below tol and throws
// NonConvergence after kFrankWolfeCap iterations.
HullDistance solve_hull_distance(const PointCloud& a, const PointCloud& b,
                                 double tol = kDefaultHullTol, double floor = kDefaultKlFloor);

// min over q in Conv(hull) of KL(q || target).
double min_kl_hull_to_point(const PointCloud& hull, std::span<const double> target,
                            double tol = kDefaultHullTol);
double min_kl_hull_to_hull(const PointCloud& a, const PointCloud& b,
                           double tol = kDefaultHullTol);

struct ClusterPartition {
  Groups clusters;
  double epsilon = 0.0;
  // Per cluster: every member is within epsilon of the hull of the others.
  std::vector<bool> internal_condition;
  // Cluster count after the pairwise pass and after each merge sweep.
  std::vector<std::size_t> count_history;
};

// Links points whose KL is below epsilon in either direction, then merges
// components whose hulls come within epsilon (either direction) until no
// merge fires. Merges found in one sweep are applied in sorted pair order.
ClusterPartition epsilon_kl_clusters(const PointCloud& cloud, double epsilon,
                                     double tol = kDefaultHullTol);

PointCloud rows_of(const Matrix& m);
// Columns of the column-normalized matrix.
PointCloud normalized_columns_of(const Matrix& m);

}  // namespace beliefs
