#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "beliefs/error.hpp"
#include "beliefs/kl_clusters.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace beliefs;

namespace {

std::vector<double> interior_point(std::mt19937_64& rng, std::size_t s) {
  std::vector<double> v = support::dirichlet(rng, s);
  double t = 0.0;
  for (double& x : v) {
    x += 0.01;
    t += x;
  }
  for (double& x : v) x /= t;
  return v;
}

PointCloud sim_rows() { return rows_of(support::load("exsim1/m.csv").matrix()); }

PointCloud fixture_rows(const std::string& rel) { return rows_of(support::load(rel).matrix()); }

}  // namespace

TEST_CASE("hull to point examples") {
  const PointCloud tri{{0.7, 0.2, 0.1}, {0.1, 0.7, 0.2}, {0.2, 0.1, 0.7}};
  CHECK(min_kl_hull_to_point(tri, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}) <= 1e-6);
  CHECK(min_kl_hull_to_point({{1.0, 0.0}}, std::vector<double>{0.5, 0.5}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));

  const PointCloud rows = sim_rows();
  const double d = min_kl_hull_to_point({rows[0], rows[4]}, rows[2]);
  CHECK(d >= 0.3);
  CHECK(std::fabs(d - oracle::grid_oracle({rows[0], rows[4]}, {rows[2]})) <= 2e-6);
}

TEST_CASE("hull to hull examples") {
  const PointCloud a{{0.6, 0.3, 0.1}, {0.1, 0.3, 0.6}};
  const PointCloud b{{0.3, 0.6, 0.1}, {0.3, 0.1, 0.6}};
  CHECK(min_kl_hull_to_hull(a, b) <= 1e-6);
  CHECK(min_kl_hull_to_hull({{1.0, 0.0}}, {{0.5, 0.5}}) == doctest::Approx(std::log(2.0)).epsilon(1e-10));

  const PointCloud far_a{{0.8, 0.1, 0.1}, {0.7, 0.2, 0.1}};
  const PointCloud far_b{{0.1, 0.1, 0.8}, {0.1, 0.3, 0.6}};
  const HullDistance h = solve_hull_distance(far_a, far_b);
  CHECK(h.value > 0.5);
  CHECK(h.gap <= kDefaultHullTol);
  CHECK(std::fabs(h.value - oracle::grid_oracle(far_a, far_b)) <= 2 * kDefaultHullTol);
  double wa = 0.0;
  for (double w : h.weights_a) {
    CHECK(w >= 0.0);
    wa += w;
  }
  CHECK(wa == doctest::Approx(1.0));
  // Asymmetric in general.
  CHECK(std::fabs(min_kl_hull_to_hull(far_a, far_b) - min_kl_hull_to_hull(far_b, far_a)) > 1e-3);
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(min_kl_hull_to_hull({}, {{1.0}}), Error);
  CHECK_THROWS_AS(min_kl_hull_to_hull({{0.5, 0.5}}, {{0.2, 0.3, 0.5}}), Error);
  CHECK_THROWS_AS(min_kl_hull_to_hull({{0.5, 0.6}}, {{0.5, 0.5}}), Error);
  CHECK_THROWS_AS(epsilon_kl_clusters({{0.5, 0.5}}, 0.0), Error);
  CHECK_THROWS_AS(solve_hull_distance({{0.5, 0.5}}, {{0.5, 0.5}}, 0.0), Error);
}

TEST_CASE("property: Frank-Wolfe agrees with the grid oracle within 2 tol") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = 2 + trial % 3;
    const std::size_t na = 1 + trial % 3;
    const std::size_t nb = 1 + (trial / 3) % 3;
    PointCloud a, b;
    for (std::size_t i = 0; i < na; ++i) a.push_back(interior_point(rng, s));
    for (std::size_t i = 0; i < nb; ++i) b.push_back(interior_point(rng, s));
    CAPTURE(trial);
    CHECK(std::fabs(min_kl_hull_to_hull(a, b) - oracle::grid_oracle(a, b)) <= 2 * kDefaultHullTol);
  }
  for (int trial = 0; trial < 15; ++trial) {
    PointCloud hull;
    for (std::size_t i = 0; i < 4; ++i) hull.push_back(interior_point(rng, 4));
    const std::vector<double> target = interior_point(rng, 4);
    CHECK(std::fabs(min_kl_hull_to_point(hull, target) - oracle::grid_oracle(hull, {target})) <= 2 * kDefaultHullTol);
  }
}

TEST_CASE("epsilon_kl_clusters examples") {
  const ClusterPartition one = epsilon_kl_clusters({{0.2, 0.8}}, 0.3);
  CHECK(one.clusters == Groups{{0}});
  CHECK(one.epsilon == 0.3);

  const ClusterPartition two = epsilon_kl_clusters({{0.9, 0.1}, {0.1, 0.9}}, 0.3);
  CHECK(two.clusters == Groups{{0}, {1}});

  const ClusterPartition kl2 = epsilon_kl_clusters(fixture_rows("kl2/m.csv"), 0.3);
  CHECK(kl2.clusters.size() <= 2);

  const ClusterPartition sim = epsilon_kl_clusters(sim_rows(), 0.3);
  CHECK(sim.clusters == Groups{{0, 4}, {1, 3}, {2}});
  CHECK(sim.internal_condition.size() == sim.clusters.size());
}

TEST_CASE("property: merging is monotone and counts fall with epsilon") {
  std::vector<PointCloud> clouds{sim_rows(),
                                 fixture_rows("kl1/m.csv"),
                                 fixture_rows("kl2/m.csv"),
                                 normalized_columns_of(support::load("exsim1/m.csv").matrix())};
  std::mt19937_64 rng(5);
  for (int k = 0; k < 6; ++k) {
    PointCloud c;
    for (std::size_t i = 0; i < 6; ++i) c.push_back(interior_point(rng, 3));
    clouds.push_back(c);
  }
  for (const PointCloud& c : clouds) {
    std::size_t prev = c.size() + 1;
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0, 2.0}) {
      const ClusterPartition part = epsilon_kl_clusters(c, eps);
      CHECK(part.clusters.size() <= prev);
      prev = part.clusters.size();
      REQUIRE_FALSE(part.count_history.empty());
      CHECK(part.count_history.back() == part.clusters.size());
      for (std::size_t i = 1; i < part.count_history.size(); ++i)
        CHECK(part.count_history[i] <= part.count_history[i - 1]);
      std::size_t members = 0;
      for (const auto& g : part.clusters) members += g.size();
      CHECK(members == c.size());
    }
  }
}

TEST_CASE("column clouds are normalized columns") {
  const Matrix m{{0.2, 0.8}, {0.6, 0.4}};
  const PointCloud cols = normalized_columns_of(m);
  REQUIRE(cols.size() == 2);
  CHECK(cols[0][0] == doctest::Approx(0.25));
  CHECK(cols[1][1] == doctest::Approx(1.0 / 3.0));
}
