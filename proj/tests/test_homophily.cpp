#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "beliefs/chain_structure.hpp"
#include "beliefs/error.hpp"
#include "beliefs/homophily.hpp"
#include "support.hpp"

using namespace beliefs;
using support::stoch;

namespace {

BeliefMatrix sim_m() { return support::load_beliefs("exsim1/m.csv"); }

HomophilyConfig sim_cfg(double eps_h = 0.25) {
  HomophilyConfig cfg;
  cfg.eps_p = 0.3;
  cfg.eps_h = eps_h;
  cfg.beta = 1.0;
  return cfg;
}

// Four-term hand evaluation of KL between two rows, natural log.
double kl_oracle(std::span<const double> p, std::span<const double> q) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] > 0) s += (long double)p[k] * std::log((long double)p[k] / q[k]);
  }
  return double(s);
}

bool same_group(const Groups& g, std::size_t a, std::size_t b) {
  for (const auto& c : g) {
    const bool ha = std::find(c.begin(), c.end(), a) != c.end();
    const bool hb = std::find(c.begin(), c.end(), b) != c.end();
    if (ha || hb) return ha && hb;
  }
  return false;
}

}  // namespace

TEST_CASE("kl_divergence") {
  const std::vector<double> p{0.2, 0.3, 0.5};
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK(kl_divergence(std::vector<double>{1, 0}, std::vector<double>{0.5, 0.5}, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));

  const BeliefMatrix m = sim_m();
  const double d24 = kl_divergence(m.belief(1), m.belief(3));
  CHECK(d24 == doctest::Approx(kl_oracle(m.belief(1), m.belief(3))).epsilon(1e-12));
  CHECK(d24 == doctest::Approx(0.128).epsilon(2e-3));
  CHECK(d24 < 0.3);
  CHECK(kl_divergence(m.belief(1), m.belief(3)) != kl_divergence(m.belief(3), m.belief(1)));

  try {
    kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0}, 0.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfiniteDivergence);
  }
  CHECK(std::isfinite(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{1, 0})));
  try {
    kl_divergence(p, std::vector<double>{0.5, 0.5});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  CHECK_THROWS_AS(kl_divergence(std::vector<double>{0.5, 0.6}, std::vector<double>{0.5, 0.5}), Error);
}

TEST_CASE("softmax_weights") {
  const auto u = softmax_weights(std::vector<double>{0.4, 0.4, 0.4}, 1.0);
  for (double w : u) CHECK(w == doctest::Approx(1.0 / 3.0));
  const auto w = softmax_weights(std::vector<double>{0.0, 0.128}, 1.0);
  CHECK(w[0] == doctest::Approx(0.532).epsilon(1e-3));
  CHECK(w[1] == doctest::Approx(0.468).epsilon(1e-3));
  CHECK(w[0] == doctest::Approx(1.0 / (1.0 + std::exp(-0.128))).epsilon(1e-15));
  const auto z = softmax_weights(std::vector<double>{0.0, 5.0, 900.0}, 0.0);
  for (double x : z) CHECK(x == doctest::Approx(1.0 / 3.0));
  const auto big = softmax_weights(std::vector<double>{1000.0, 1001.0}, 50.0);
  CHECK(std::isfinite(big[0]));
  CHECK(big[0] + big[1] == doctest::Approx(1.0));
  try {
    softmax_weights(std::vector<double>{}, 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySubset);
  }
}

TEST_CASE("build_network") {
  const BeliefMatrix same(stoch({{0.2, 0.8}, {0.2, 0.8}, {0.2, 0.8}}));
  const StochMatrix u = build_network(same, sim_cfg());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(u(i, j) == doctest::Approx(1.0 / 3.0));

  const Matrix printed{{0.5, 0, 0, 0, 0.5},
                       {0, 0.532, 0, 0.468, 0},
                       {0, 0, 1, 0, 0},
                       {0, 0.464, 0, 0.536, 0},
                       {0.5, 0, 0, 0, 0.5}};
  const StochMatrix p1 = build_network(sim_m(), sim_cfg());
  CHECK(support::max_diff(p1.matrix(), printed) < 1.5e-3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK((p1(i, j) == 0.0) == (printed(i, j) == 0.0));

  HomophilyConfig tight = sim_cfg();
  tight.eps_p = 1e-6;
  CHECK(build_network(sim_m(), tight) == StochMatrix::identity(5));
}

TEST_CASE("build_concepts") {
  CHECK(build_concepts(sim_m(), sim_cfg()) == StochMatrix::identity(4));
  const BeliefMatrix flat(stoch({{0.25, 0.25, 0.25, 0.25}, {0.25, 0.25, 0.25, 0.25}}));
  const StochMatrix h = build_concepts(flat, sim_cfg());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(h(i, j) == doctest::Approx(0.25));
  try {
    build_concepts(BeliefMatrix(stoch({{1, 0}, {1, 0}})), sim_cfg());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroColumn);
  }
}

TEST_CASE("groups") {
  const StochMatrix p = stoch({{0.5, 0, 0.5}, {0, 1, 0}, {0, 0, 1}});
  CHECK(link_groups(p) == Groups{{0, 2}, {1}});
  const BeliefMatrix q(stoch({{0.5, 0.5}, {0.1, 0.9}, {0.5, 0.5}}));
  CHECK(belief_groups(q, 1e-6) == Groups{{0, 2}, {1}});
}

TEST_CASE("run_homophily on the three-group example") {
  const HomophilyTrace t = run_homophily(sim_m(), sim_cfg());
  REQUIRE(t.stabilized_at.has_value());
  CHECK(*t.stabilized_at <= 100);
  CHECK(t.steps.front().h == StochMatrix::identity(4));
  CHECK(t.final_groups == Groups{{0, 4}, {1, 3}, {2}});
  CHECK(t.belief_groups == Groups{{0, 4}, {1, 3}, {2}});

  const Matrix p_late{{0.5, 0, 0, 0, 0.5},
                      {0, 0.5, 0, 0.5, 0},
                      {0, 0, 1, 0, 0},
                      {0, 0.5, 0, 0.5, 0},
                      {0.5, 0, 0, 0, 0.5}};
  const Matrix h_late{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0.5, 0.5}, {0, 0, 0.5, 0.5}};
  for (std::size_t k = 1; k < t.steps.size(); ++k) CHECK(support::max_diff(t.steps[k].p.matrix(), p_late) < 1.5e-3);
  for (std::size_t k = 4; k < t.steps.size(); ++k) CHECK(support::max_diff(t.steps[k].h.matrix(), h_late) < 1.5e-3);

  // Each recorded step is the product of its own structures.
  BeliefMatrix q = t.initial;
  for (const HomophilyStep& s : t.steps) {
    CHECK(support::max_diff(s.q.matrix(), support::naive_mul(support::naive_mul(s.p.matrix(), q.matrix()), s.h.matrix())) < 1e-14);
    q = s.q;
  }
}

TEST_CASE("step limit carries the partial trace") {
  HomophilyConfig cfg = sim_cfg();
  cfg.max_steps = 2;
  try {
    run_homophily(sim_m(), cfg);
    FAIL("expected throw");
  } catch (const StepLimitReached& e) {
    CHECK(e.code() == ErrorCode::StepLimitReached);
    CHECK(e.trace().steps.size() == 2);
    CHECK_FALSE(e.trace().stabilized_at.has_value());
  }
}

TEST_CASE("config validation") {
  HomophilyConfig cfg;
  cfg.eps_p = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = HomophilyConfig{};
  cfg.beta = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = HomophilyConfig{};
  cfg.max_steps = 0;
  CHECK_THROWS_AS(run_homophily(sim_m(), cfg), Error);
}

TEST_CASE("structure modes") {
  HomophilyConfig cfg = sim_cfg();
  cfg.mode = StructureMode::NetworkOnly;
  const HomophilyTrace t = run_homophily(sim_m(), cfg);
  for (const auto& s : t.steps) CHECK(s.h == StochMatrix::identity(4));
  cfg.mode = StructureMode::ConceptsOnly;
  const HomophilyTrace c = run_homophily(sim_m(), cfg);
  for (const auto& s : c.steps) CHECK(s.p == StochMatrix::identity(5));
}

TEST_CASE("custom divergence") {
  HomophilyConfig cfg = sim_cfg();
  cfg.divergence = [](std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d += std::fabs(a[k] - b[k]);
    return d;
  };
  cfg.eps_p = 2.5;
  const StochMatrix p = build_network(sim_m(), cfg);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(p(i, j) > 0.0);
}

TEST_CASE("property: every network has a positive diagonal and is aperiodic") {
  struct Case {
    std::string name;
    BeliefMatrix m;
    HomophilyConfig cfg;
  };
  std::vector<Case> cases{{"exsim1", sim_m(), sim_cfg()},
                          {"exsim2", sim_m(), sim_cfg(0.4)},
                          {"kl1", support::load_beliefs("kl1/m.csv"), sim_cfg(0.2)},
                          {"kl2", support::load_beliefs("kl2/m.csv"), sim_cfg(0.05)},
                          {"kl3", support::load_beliefs("kl2/m.csv"), sim_cfg(0.5)}};
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) {
    const std::size_t r = 2 + k % 5;
    const std::size_t s = 2 + k % 3;
    Matrix m(r, s);
    for (std::size_t i = 0; i < r; ++i) {
      const auto row = support::dirichlet(rng, s);
      for (std::size_t j = 0; j < s; ++j) m(i, j) = row[j];
    }
    cases.push_back({"random " + std::to_string(k), BeliefMatrix(row_normalize(m)), sim_cfg()});
  }
  for (const Case& c : cases) {
    CAPTURE(c.name);
    const HomophilyTrace t = run_homophily(c.m, c.cfg);
    CHECK(t.stabilized_at.has_value());
    for (const HomophilyStep& s : t.steps) {
      for (std::size_t i = 0; i < s.p.rows(); ++i) CHECK(s.p(i, i) > 0.0);
      CHECK(analyze(s.p).is_aperiodic());
    }

  }
}

TEST_CASE("concept thresholds decide between two groups and one") {
  const BeliefMatrix m = support::load_beliefs("kl2/m.csv");
  const HomophilyTrace two = run_homophily(m, sim_cfg(0.05));
  CHECK(two.final_groups == Groups{{0, 2, 3}, {1}});
  const HomophilyTrace one = run_homophily(m, sim_cfg(0.5));
  CHECK(one.final_groups == Groups{{0, 1, 2, 3}});
}

TEST_CASE("links can break as beliefs move") {
  // Person 4 first links to person 2, then drifts toward persons 1 and 3
  // and the link is dropped, with or without a moving concept structure.
  for (StructureMode mode : {StructureMode::Both, StructureMode::NetworkOnly}) {
    HomophilyConfig cfg = sim_cfg(0.05);
    cfg.mode = mode;
    const HomophilyTrace t = run_homophily(support::load_beliefs("kl2/m.csv"), cfg);
    CHECK(t.steps.front().p(1, 3) > 0.0);
    CHECK(t.steps.back().p(1, 3) == 0.0);
    bool broke = false;
    for (std::size_t k = 1; k < t.steps.size(); ++k) {
      const Groups before = link_groups(t.steps[k - 1].p);
      const Groups after = link_groups(t.steps[k].p);
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b)
          if (same_group(before, a, b) && !same_group(after, a, b)) broke = true;
    }
    CHECK(broke);
  }
}
