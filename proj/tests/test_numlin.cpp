#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "svloja/errors.hpp"
#include "svloja/numlin.hpp"
#include "test_support.hpp"

using namespace svloja;
using svloja::testing::matrix_of;
using svloja::testing::random_matrix;
using svloja::testing::random_point;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto &r : rows) {
    std::size_t j = 0;
    for (double v : r)
      m(i, j++) = v;
    ++i;
  }
  return m;
}

void check_decomposition(const Matrix &s, const EigenDecomposition &e) {
  const std::size_t n = s.rows();
  for (std::size_t k = 0; k + 1 < n; ++k)
    CHECK(e.values[k] <= e.values[k + 1]);
  // orthonormal columns
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double d = dot(e.vectors.column(a), e.vectors.column(b));
      CHECK(std::fabs(d - (a == b ? 1.0 : 0.0)) <= 1e-10);
    }
  // residuals
  for (std::size_t k = 0; k < n; ++k) {
    const Vector v = e.vectors.column(k);
    Vector r = s * v;
    for (std::size_t i = 0; i < n; ++i)
      r[i] -= e.values[k] * v[i];
    CHECK(norm(r) <= 1e-9 * (1 + std::fabs(e.values[k])));
  }
}

} // namespace

TEST_CASE("sym_eig: small cases") {
  const auto id = sym_eig(Matrix::identity(2));
  CHECK(id.values[0] == 1.0);
  CHECK(id.values[1] == 1.0);
  check_decomposition(Matrix::identity(2), id);

  const auto d = sym_eig(mat({{4, 0}, {0, 1}}));
  CHECK(d.values[0] == 1.0);
  CHECK(d.values[1] == 4.0);

  const Matrix s = mat({{2, 1}, {1, 2}});
  const auto e = sym_eig(s);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-14));
  const double r = 1 / std::sqrt(2.0);
  CHECK(std::fabs(std::fabs(e.vectors(0, 0)) - r) < 1e-14);
  CHECK(e.vectors(0, 0) * e.vectors(1, 0) < 0); // (1,-1)/√2 up to sign
  CHECK(e.vectors(0, 1) * e.vectors(1, 1) > 0); // (1, 1)/√2 up to sign
  check_decomposition(s, e);
}

TEST_CASE("sym_eig: errors") {
  Matrix bad = Matrix::identity(2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(sym_eig(bad), NumericalError);
  CHECK_THROWS_AS(sym_eig(Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(sym_eig(mat({{1, 2}, {0, 1}})), NumericalError);
}

TEST_CASE("sym_eig agrees with Eigen's self-adjoint solver") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    Matrix s(n, n);
    Eigen::MatrixXd es(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const double v = g(rng);
        s(i, j) = s(j, i) = v;
        es(i, j) = es(j, i) = v;
      }
    const auto e = sym_eig(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(es);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::fabs(e.values[k] - ref.eigenvalues()(k)) <=
            1e-12 * (1 + s.frobenius_norm()));
    check_decomposition(s, e);
  }
}

TEST_CASE("smallest_singular_value: examples") {
  const double m3[1] = {-3};
  CHECK(smallest_singular_value(matrix_of({"x"}, {{"x"}}), m3) == 3.0);
  const double pt[2] = {2, -1};
  CHECK(smallest_singular_value(
            matrix_of({"x1", "x2"}, {{"x1", "0"}, {"0", "x2"}}), pt) == 1.0);
  const double z[1] = {0};
  CHECK(smallest_singular_value(matrix_of({"x"}, {{"x", "1"}}), z) == 1.0);
  const double inf[1] = {INFINITY};
  CHECK_THROWS_AS(smallest_singular_value(matrix_of({"x"}, {{"x"}}), inf),
                  NumericalError);
}

TEST_CASE("min_eigenspace: tolerance semantics") {
  const Matrix a = min_eigenspace(mat({{1, 0}, {0, 4}}), 1e-8);
  REQUIRE(a.cols() == 1);
  CHECK(std::fabs(a(0, 0)) == doctest::Approx(1.0));
  CHECK(a(1, 0) == 0.0);
  CHECK(min_eigenspace(Matrix::identity(2), 1e-8).cols() == 2);
  CHECK(min_eigenspace(mat({{1 + 1e-12, 0}, {0, 1}}), 1e-8).cols() == 2);
  CHECK_THROWS(min_eigenspace(Matrix::identity(2), 0.0));
}

TEST_CASE("property: sphere oracle bounds sigma_min from above") {
  // sigma_min = min over unit y of ‖y^T F(x)‖; every sample is >= sigma_min.
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t p = 1 + (trial / 3) % 3;
    const std::size_t q = p + trial % (4 - p);
    const auto f = random_matrix(n, p, q, 1 + trial % 3, rng);
    const auto x = random_point(n, 1.0, rng);
    const double sigma = smallest_singular_value(f, x);
    const Matrix fx = f.evaluate(x);
    double sampled = INFINITY;
    for (int s = 0; s < 10000; ++s) {
      Vector y(p);
      for (auto &c : y)
        c = g(rng);
      const double len = norm(y);
      for (auto &c : y)
        c /= len;
      Vector yf(q, 0.0);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j)
          yf[j] += y[i] * fx(i, j);
      sampled = std::min(sampled, norm(yf));
    }
    CHECK(sampled >= sigma - 1e-9);
  }
}

TEST_CASE("property: f^2 equals lambda_min of the Gram matrix") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 3, p = 1 + trial % 3;
    const auto f = random_matrix(n, p, p + trial % 2, 2, rng);
    const auto x = random_point(n, 1.0, rng);
    const double sigma = smallest_singular_value(f, x);
    const double lam = sym_eig(f.gram(x)).values[0];
    CHECK(std::fabs(sigma * sigma - std::max(lam, 0.0)) <=
          1e-10 * (1 + std::fabs(lam)));
  }
}

TEST_CASE("property: diagonal matrices give min |d_i|") {
  std::mt19937_64 rng(34);
  const std::vector<std::string> vars = {"x1", "x2"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<Polynomial>> e(3, std::vector<Polynomial>(3, Polynomial(2)));
    for (std::size_t i = 0; i < 3; ++i)
      e[i][i] = testing::random_polynomial(2, 3, rng);
    const PolyMatrix f(vars, e);
    const auto x = random_point(2, 1.5, rng);
    double expect = INFINITY;
    for (std::size_t i = 0; i < 3; ++i)
      expect = std::min(expect, std::fabs(e[i][i].evaluate(x)));
    CHECK(std::fabs(smallest_singular_value(f, x) - expect) <= 1e-10);
  }
}

TEST_CASE("tall matrices: auto-transposed sigma_min matches an SVD of the original") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t q = 1 + trial % 2, p = q + 1;
    std::vector<std::vector<Polynomial>> e(p);
    for (auto &row : e)
      for (std::size_t j = 0; j < q; ++j)
        row.push_back(testing::random_polynomial(n, 2, rng));
    const PolyMatrix f(testing::var_names(n), e);
    REQUIRE(f.transposed());
    const auto x = random_point(n, 1.0, rng);
    Eigen::MatrixXd tall(p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j)
        tall(i, j) = e[i][j].evaluate(x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(tall);
    const double ref = svd.singularValues()(q - 1);
    CHECK(std::fabs(smallest_singular_value(f, x) - ref) <=
          1e-7 * (1 + ref)); // sqrt of a clamped eigenvalue loses half the digits near 0
  }
}
