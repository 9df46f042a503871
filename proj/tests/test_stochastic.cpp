#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "beliefs/error.hpp"
#include "beliefs/family.hpp"
#include "support.hpp"

using namespace beliefs;
using support::stoch;

TEST_CASE("matrix construction rejects empty, ragged and non-finite input") {
  CHECK_THROWS_AS(Matrix(0, 2), Error);
  CHECK_THROWS_AS(Matrix({{1.0, 2.0}, {3.0}}), Error);
  CHECK_THROWS_AS(Matrix(1, 1, std::nan("")), Error);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), Error);
  const Matrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(m.transposed()(2, 1) == 6);
  CHECK(m.column(1) == std::vector<double>{2, 5});
}

TEST_CASE("validate_stochastic") {
  SUBCASE("uniform rows accepted") {
    const StochMatrix s = validate_stochastic(Matrix{{0.5, 0.5}, {0.5, 0.5}}, 1e-9);
    CHECK(s(1, 0) == 0.5);
    CHECK(s.tol() == 1e-9);
  }
  SUBCASE("row sum out of tolerance names the row and sum") {
    try {
      validate_stochastic(Matrix{{0.6, 0.5}, {0.5, 0.5}}, 1e-9);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RowSumOutOfTolerance);
      CHECK(e.detail() == "row 0 sums to 1.1");
    }
  }
  SUBCASE("negative entry") {
    try {
      validate_stochastic(Matrix{{1.2, -0.2}, {0.5, 0.5}});
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NegativeEntry);
      CHECK(e.detail() == "entry (0,1) = -0.2");
    }
  }
  SUBCASE("rounded network matrix at ingest tolerance") {
    const Matrix raw = csv::read(support::fixture("ex2/p.csv"));
    CHECK_NOTHROW(validate_stochastic(raw, 1e-3));
    const StochMatrix s = ingest_stochastic(raw);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      double t = 0;
      for (double v : s.row(i)) t += v;
      CHECK(t == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("ingest rejects sums off by more than the ingest tolerance") {
    CHECK_THROWS_AS(ingest_stochastic(Matrix{{0.5, 0.52}}), Error);
  }
}

TEST_CASE("multiply") {
  const StochMatrix p = stoch({{0.9, 0.1}, {0.2, 0.8}});
  const StochMatrix flip = stoch({{0, 1}, {1, 0}});
  CHECK(multiply(StochMatrix::identity(2), p) == p);
  CHECK(multiply(flip, flip) == StochMatrix::identity(2));
  const Matrix pp = multiply(p, p).matrix();
  CHECK(support::max_diff(pp, Matrix{{0.83, 0.17}, {0.34, 0.66}}) < 1e-15);
  CHECK(support::max_diff(pp, support::naive_mul(p.matrix(), p.matrix())) < 1e-15);

  const StochMatrix wide = stoch({{0.2, 0.3, 0.5}, {1, 0, 0}});
  CHECK(multiply(p, wide).cols() == 3);
  try {
    multiply(wide, p);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("belief products keep the belief shape") {
  const StochMatrix p = stoch({{0.9, 0.1}, {0.2, 0.8}});
  const BeliefMatrix m(stoch({{0.2, 0.3, 0.5}, {1, 0, 0}}));
  const StochMatrix h = stoch({{0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}});
  const BeliefMatrix q = multiply(multiply(p, m), h);
  CHECK(q.people() == 2);
  CHECK(q.concepts() == 3);
  CHECK(support::max_diff(q.matrix(), support::naive_mul(support::naive_mul(p.matrix(), m.matrix()),
                                                         h.matrix())) < 1e-15);
}

TEST_CASE("matrix_power") {
  const StochMatrix p = stoch({{0.9, 0.1}, {0.2, 0.8}});
  CHECK(matrix_power(p, 0) == StochMatrix::identity(2));
  const StochMatrix flip = stoch({{0, 1}, {1, 0}});
  CHECK(matrix_power(flip, 2) == StochMatrix::identity(2));
  CHECK(matrix_power(flip, 3) == flip);

  // pi P = pi solved by hand: pi = (2/3, 1/3).
  const StochMatrix far = matrix_power(p, 200);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(far(i, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(far(i, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  CHECK(support::max_diff(matrix_power(p, 13).matrix(), support::naive_power(p.matrix(), 13)) < 1e-14);
  CHECK(matrix_power(p, 37) == matrix_power(p, 37));

  try {
    matrix_power(stoch({{0.2, 0.8, 0.0}, {0.0, 0.5, 0.5}}), 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSquare);
  }
}

TEST_CASE("row and column normalization") {
  const StochMatrix r = row_normalize(Matrix{{2, 2}, {1, 3}});
  CHECK(r.matrix() == Matrix{{0.5, 0.5}, {0.25, 0.75}});
  CHECK(row_normalize(Matrix::identity(3)).matrix() == Matrix::identity(3));
  try {
    row_normalize(Matrix{{1, 1}, {0, 0}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroRow);
    CHECK(e.detail() == "row 1");
  }

  const Matrix m = csv::read(support::fixture("exsim1/m.csv"));
  const Matrix c = col_normalize(m);
  for (std::size_t j = 0; j < c.cols(); ++j) {
    double raw = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) raw += m(i, j);
    double t = 0.0;
    for (std::size_t i = 0; i < c.rows(); ++i) {
      t += c(i, j);
      CHECK(c(i, j) == doctest::Approx(m(i, j) / raw));
    }
    CHECK(t == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(col_normalize(Matrix{{0, 2}, {1, 2}})(0, 0) == 0.0);
  try {
    col_normalize(Matrix{{0, 2}, {0, 2}});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroColumn);
  }
}

TEST_CASE("delta coefficient") {
  CHECK(delta_coefficient(stoch({{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}})) == 0.0);
  CHECK(delta_coefficient(StochMatrix::identity(2)) == 1.0);
  CHECK(delta_coefficient(stoch({{0.9, 0.1}, {0.2, 0.8}})) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(delta_coefficient(stoch({{0.2, 0.3, 0.5}, {0.1, 0.6, 0.3}})) ==
        doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("property: product closure, delta contraction, power additivity") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 15;
    const StochMatrix a = support::random_stochastic(rng, n, n, 0.3);
    const StochMatrix b = support::random_stochastic(rng, n, n, 0.3);
    const StochMatrix ab = multiply(a, b);
    CHECK(ab.tol() == kDefaultTolerance);
    CHECK(delta_coefficient(ab) <= delta_coefficient(b) + 1e-12);
    const std::size_t x = trial % 7;
    const std::size_t y = (trial * 3) % 11;
    const Matrix lhs = matrix_power(a, x + y).matrix();
    const Matrix rhs = multiply(matrix_power(a, x), matrix_power(a, y)).matrix();
    CHECK(support::max_diff(lhs, rhs) <= 1e-12);
  }
}

TEST_CASE("csv parsing and writing") {
  SUBCASE("with and without header") {
    std::istringstream with("# rows=2 cols=2\n0.5,0.5\n\n0.25, 0.75\n");
    std::istringstream without("1,0\n0,1\n");
    CHECK(csv::parse(with) == Matrix{{0.5, 0.5}, {0.25, 0.75}});
    CHECK(csv::parse(without) == Matrix::identity(2));
  }
  SUBCASE("header shape is enforced") {
    std::istringstream bad("# rows=3 cols=2\n0.5,0.5\n");
    CHECK_THROWS_AS(csv::parse(bad, "x.csv"), Error);
  }
  SUBCASE("bad token reports source and line") {
    std::istringstream bad("0.5,0.5\n0.5,abc\n");
    try {
      csv::parse(bad, "x.csv");
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.detail()).rfind("x.csv:2:", 0) == 0);
    }
  }
  SUBCASE("ragged rows") {
    std::istringstream bad("0.5,0.5\n1\n");
    CHECK_THROWS_AS(csv::parse(bad), Error);
  }
  SUBCASE("round trip at twelve significant digits") {
    std::mt19937_64 rng(7);
    const StochMatrix m = support::random_stochastic(rng, 4, 3);
    std::stringstream io;
    csv::write(io, m.matrix());
    CHECK(io.str().rfind("# rows=4 cols=3\n", 0) == 0);
    CHECK(support::max_diff(csv::parse(io), m.matrix()) < 1e-12);
  }
  CHECK(csv::format_decimal(-0.0) == "0");
  CHECK(csv::format_decimal(0.125) == "0.125");
}

TEST_CASE("matrix family") {
  const StochMatrix a = stoch({{0.5, 0.5}, {0.5, 0.5}});
  const StochMatrix b = stoch({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(MatrixFamily({}, {}), Error);
  CHECK_THROWS_AS(MatrixFamily({a, b}, {1.0}), Error);
  CHECK_THROWS_AS(MatrixFamily({a, b}, {1.0, 0.0}), Error);
  CHECK_THROWS_AS(MatrixFamily({a, b}, {0.6, 0.6}), Error);
  try {
    MatrixFamily({a, stoch({{1.0}})}, {0.5, 0.5});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
  const MatrixFamily f = MatrixFamily::uniform({a, b});
  CHECK(f.weight(1) == 0.5);
  CHECK(word_product(f, {}) == StochMatrix::identity(2));
  CHECK(word_product(f, {1, 1}) == StochMatrix::identity(2));
  const StochMatrix c = stoch({{1, 0}, {0.3, 0.7}});
  const MatrixFamily g = MatrixFamily::uniform({c, b});
  CHECK(word_product(g, {0, 1}).matrix() == support::naive_mul(c.matrix(), b.matrix()));
}
