#include <doctest.h>

#include <cmath>
#include <random>

#include "svloja/distance.hpp"
#include "svloja/errors.hpp"
#include "svloja/sampling.hpp"
#include "test_support.hpp"

using namespace svloja;
using svloja::testing::matrix_of;

namespace {

const std::vector<std::string> kX = {"x"};
const std::vector<std::string> kX12 = {"x1", "x2"};

} // namespace

TEST_CASE("distance: F=(x) from 3") {
  const double q[1] = {3};
  const auto d = estimate_distance_to_zero_set(matrix_of(kX, {{"x"}}), q);
  CHECK(d.value == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::fabs(d.witness[0]) <= 1e-8);
  CHECK(d.restarts_used == 16);
}

TEST_CASE("distance: two roots, nearer one wins") {
  const double q[1] = {0.4};
  const auto d = estimate_distance_to_zero_set(matrix_of(kX, {{"x^2 - x"}}), q);
  CHECK(d.value == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(std::fabs(d.witness[0]) <= 1e-8);
}

TEST_CASE("distance: union of coordinate axes") {
  const double q[2] = {2, 3};
  const auto d = estimate_distance_to_zero_set(
      matrix_of(kX12, {{"x1", "0"}, {"0", "x2"}}), q);
  CHECK(d.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::fabs(d.witness[0]) <= 1e-8);
  CHECK(d.witness[1] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("distance: empty zero set and bad input") {
  const double q[1] = {0.5};
  const auto f = matrix_of(kX, {{"x^2 + 1"}});
  CHECK_THROWS_AS(estimate_distance_to_zero_set(f, q), NoZeroFound);
  try {
    estimate_distance_to_zero_set(f, q);
  } catch (const NoZeroFound &e) {
    CHECK(std::string(e.what()).rfind("no zero found", 0) == 0);
  }
  const double bad[1] = {NAN};
  CHECK_THROWS_AS(estimate_distance_to_zero_set(matrix_of(kX, {{"x"}}), bad),
                  NumericalError);
}

TEST_CASE("distance: intersections") {
  const double q[2] = {0.3, -0.4};
  const auto a = estimate_distance_to_intersection(matrix_of(kX12, {{"x1"}}),
                                                   matrix_of(kX12, {{"x2"}}), q);
  CHECK(a.value == doctest::Approx(0.5).epsilon(1e-9));
  const auto b = estimate_distance_to_intersection(
      matrix_of(kX12, {{"x1^2 + x2^2"}}), matrix_of(kX12, {{"x1"}}), q);
  CHECK(b.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS(
      estimate_distance_to_intersection(matrix_of(kX12, {{"x1"}}),
                                        matrix_of(kX12, {{"x1 - 1"}}), q),
      NoZeroFound);
}

TEST_CASE("property: diagonal matrices match the closed-form distance") {
  // S_F for diag(d_1, ..., d_k) with linear d_i is a union of hyperplanes.
  const auto f = matrix_of({"x1", "x2", "x3"},
                           {{"x1 - 1", "0", "0"},
                            {"0", "x2 + 2", "0"},
                            {"0", "0", "x3"}});
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 100; ++i) {
    const double q[3] = {u(rng), u(rng), u(rng)};
    const double expect =
        std::min({std::fabs(q[0] - 1), std::fabs(q[1] + 2), std::fabs(q[2])});
    DistanceOptions opts;
    opts.seed = derive_seed(51, i);
    const auto d = estimate_distance_to_zero_set(f, q, opts);
    CHECK(std::fabs(d.value - expect) <= 1e-6 * std::max(expect, 1e-12) + 1e-12);
  }
}

TEST_CASE("property: univariate polynomials match the nearest root") {
  // roots 0, 1, -2 of x^3 + x^2 - 2x
  const auto cubic = matrix_of(kX, {{"x^3 + x^2 - 2*x"}});
  const auto quad = matrix_of(kX, {{"x^2 - x"}});
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100; ++i) {
    const double q[1] = {u(rng)};
    DistanceOptions opts;
    opts.seed = derive_seed(52, i);
    const auto dc = estimate_distance_to_zero_set(cubic, q, opts);
    const double ec =
        std::min({std::fabs(q[0]), std::fabs(q[0] - 1), std::fabs(q[0] + 2)});
    CHECK(std::fabs(dc.value - ec) <= 1e-6 * ec + 1e-12);
    const auto dq = estimate_distance_to_zero_set(quad, q, opts);
    const double eq = std::min(std::fabs(q[0]), std::fabs(q[0] - 1));
    CHECK(std::fabs(dq.value - eq) <= 1e-6 * eq + 1e-12);
  }
}

TEST_CASE("property: witnesses lie on the zero set") {
  const auto circle = matrix_of(kX12, {{"x1^2 + x2^2 - 1"}});
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const double q[2] = {u(rng), u(rng)};
    const auto d = estimate_distance_to_zero_set(circle, q);
    CHECK(smallest_singular_value(circle, d.witness) <= 1e-8);
    CHECK(d.value == doctest::Approx(std::fabs(std::hypot(q[0], q[1]) - 1))
                         .epsilon(1e-6));
    CHECK(d.value == doctest::Approx(distance(q, d.witness)));
  }
}
