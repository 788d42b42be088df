#include <doctest.h>

#include <random>

#include "svloja/errors.hpp"
#include "svloja/numlin.hpp"
#include "svloja/polymatrix.hpp"
#include "test_support.hpp"

using namespace svloja;
using nlohmann::json;
using svloja::testing::random_matrix;
using svloja::testing::random_point;

TEST_CASE("load_matrix: 1x1") {
  const auto f = load_matrix(json::parse(R"({"vars":["x"],"entries":[["x"]]})"));
  CHECK(f.rows() == 1);
  CHECK(f.cols() == 1);
  CHECK(f.degree() == 1);
  CHECK_FALSE(f.transposed());
}

TEST_CASE("load_matrix: diagonal 2x2") {
  const auto f = load_matrix(json::parse(
      R"({"vars":["x1","x2"],"entries":[["x1","0"],["0","x2"]],"name":"diag"})"));
  CHECK(f.rows() == 2);
  CHECK(f.entry(0, 1).is_zero());
  CHECK(f.name() == "diag");
}

TEST_CASE("load_matrix: tall documents are stored transposed") {
  const auto f = load_matrix(json::parse(
      R"({"vars":["x"],"entries":[["x","1"],["2","x^2"],["3","4"]]})"));
  CHECK(f.transposed());
  CHECK(f.rows() == 2);
  CHECK(f.cols() == 3);
  CHECK(f.entry(1, 1) == parse_polynomial("x^2", std::vector<std::string>{"x"}));
  CHECK(f.entry(0, 2) == parse_polynomial("3", std::vector<std::string>{"x"}));
}

TEST_CASE("load_matrix: schema errors") {
  CHECK_THROWS_AS(load_matrix(json::parse(R"([1])")), SchemaError);
  CHECK_THROWS_AS(load_matrix(json::parse(R"({"entries":[["x"]]})")),
                  SchemaError);
  CHECK_THROWS_AS(
      load_matrix(json::parse(R"({"vars":["x"],"entries":[["x"],["x","1"]]})")),
      SchemaError);
  CHECK_THROWS_AS(
      load_matrix(json::parse(R"({"vars":["x"],"entries":[["x", 3]]})")),
      SchemaError);
  CHECK_THROWS_AS(load_matrix(json::parse(R"({"vars":["x"],"entries":[]})")),
                  SchemaError);
  CHECK_THROWS_AS(
      load_matrix(json::parse(R"({"vars":["x"],"entries":[["x"]],"extra":1})")),
      SchemaError);
  try {
    load_matrix(json::parse(R"({"vars":["x"],"entries":[["x","y"]]})"));
    FAIL("expected schema error");
  } catch (const SchemaError &e) {
    CHECK(std::string(e.what()).find("entry (0,1)") != std::string::npos);
  }
}

TEST_CASE("evaluate_matrix") {
  const std::vector<std::string> x = {"x"};
  const std::vector<std::string> x12 = {"x1", "x2"};
  const double three[1] = {3};
  CHECK(testing::matrix_of(x, {{"x"}}).evaluate(three)(0, 0) == 3.0);

  const auto diag = testing::matrix_of(x12, {{"x1", "0"}, {"0", "x2"}});
  const double pt[2] = {2, -1};
  const Matrix m = diag.evaluate(pt);
  CHECK(m(0, 0) == 2.0);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 1) == -1.0);

  const double pt2[2] = {1, 2};
  const Matrix row = testing::matrix_of(x12, {{"x1", "x2", "1"}}).evaluate(pt2);
  CHECK(row(0, 0) == 1.0);
  CHECK(row(0, 1) == 2.0);
  CHECK(row(0, 2) == 1.0);
  CHECK_THROWS_AS(diag.evaluate(three), DimensionError);
}

TEST_CASE("gram") {
  const std::vector<std::string> x = {"x"};
  const std::vector<std::string> x12 = {"x1", "x2"};
  const double three[1] = {3};
  CHECK(testing::matrix_of(x, {{"x"}}).gram(three)(0, 0) == 9.0);
  const double pt[2] = {2, -1};
  const Matrix g =
      testing::matrix_of(x12, {{"x1", "0"}, {"0", "x2"}}).gram(pt);
  CHECK(g(0, 0) == 4.0);
  CHECK(g(0, 1) == 0.0);
  CHECK(g(1, 1) == 1.0);
  const double pt2[2] = {1, 2};
  CHECK(testing::matrix_of(x12, {{"x1", "x2", "1"}}).gram(pt2)(0, 0) == 6.0);
}

TEST_CASE("gram_polynomials") {
  const std::vector<std::string> x = {"x"};
  const std::vector<std::string> x12 = {"x1", "x2"};
  CHECK(testing::matrix_of(x, {{"x"}}).gram_polynomials()[0][0] ==
        parse_polynomial("x^2", x));
  const auto gd =
      testing::matrix_of(x12, {{"x1", "0"}, {"0", "x2"}}).gram_polynomials();
  CHECK(gd[0][0] == parse_polynomial("x1^2", x12));
  CHECK(gd[0][1].is_zero());
  CHECK(gd[1][0].is_zero());
  CHECK(gd[1][1] == parse_polynomial("x2^2", x12));
  CHECK(testing::matrix_of(x, {{"x", "1"}}).gram_polynomials()[0][0] ==
        parse_polynomial("x^2 + 1", x));
}

TEST_CASE("constant matrices are accepted but refuse the degree precondition") {
  const auto c = testing::matrix_of({"x"}, {{"2", "1"}});
  CHECK(c.degree() == 0);
  CHECK_THROWS_AS(c.require_positive_degree(), PreconditionError);
}

TEST_CASE("property: gram agrees with gram polynomials, symmetric, PSD") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t p = 1 + (trial / 3) % 3;
    const std::size_t q = p + (trial / 9) % (4 - p);
    const auto f = random_matrix(n, p, q, 1 + trial % 3, rng);
    const auto gp = f.gram_polynomials();
    const auto x = random_point(n, 1.5, rng);
    const Matrix g = f.gram(x);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        CHECK(std::fabs(g(i, j) - gp[i][j].evaluate(x)) <= 1e-10);
        CHECK(g(i, j) == g(j, i));
      }
    for (double lam : sym_eig(g).values)
      CHECK(lam >= -1e-10);
  }
}

TEST_CASE("property: square matrices and their transposes share sigma_min") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 3, p = 1 + trial % 3;
    const auto f = random_matrix(n, p, p, 2, rng);
    std::vector<std::vector<Polynomial>> t(p, std::vector<Polynomial>(p));
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        t[j][i] = f.entry(i, j);
    const PolyMatrix ft(f.vars(), std::move(t));
    const auto x = random_point(n, 1.0, rng);
    CHECK(std::fabs(smallest_singular_value(f, x) -
                    smallest_singular_value(ft, x)) <= 1e-10);
  }
}
