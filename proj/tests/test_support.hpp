#pragma once

// Random generators shared by the property tests.

#include <random>
#include <string>
#include <vector>

#include "svloja/polymatrix.hpp"

namespace svloja::testing {

inline std::vector<std::string> var_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t k = 0; k < n; ++k)
    v.push_back("x" + std::to_string(k + 1));
  return v;
}

// Dense-ish random polynomial with total degree <= max_degree, coefficients
// in [-2, 2]. About half of the candidate monomials are kept.
inline Polynomial random_polynomial(std::size_t n, unsigned max_degree,
                                    std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::bernoulli_distribution keep(0.5);
  PolynomialBuilder b(n);
  const int tries = 2 + static_cast<int>(n * max_degree);
  for (int t = 0; t < tries; ++t) {
    if (!keep(rng))
      continue;
    std::vector<std::uint32_t> e(n, 0);
    unsigned total = deg(rng);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (total--)
      e[pick(rng)] += 1;
    b.add_term(Monomial(std::move(e)), coeff(rng));
  }
  return b.build();
}

inline PolyMatrix random_matrix(std::size_t n, std::size_t p, std::size_t q,
                                unsigned max_degree, std::mt19937_64 &rng) {
  std::vector<std::vector<Polynomial>> entries(p);
  for (auto &row : entries)
    for (std::size_t j = 0; j < q; ++j)
      row.push_back(random_polynomial(n, max_degree, rng));
  return PolyMatrix(var_names(n), std::move(entries));
}

inline std::vector<double> random_point(std::size_t n, double radius,
                                        std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<double> x(n);
  for (auto &c : x)
    c = u(rng);
  return x;
}

// Build a matrix from entry strings.
inline PolyMatrix matrix_of(std::vector<std::string> vars,
                            const std::vector<std::vector<std::string>> &rows) {
  std::vector<std::vector<Polynomial>> entries;
  for (const auto &r : rows) {
    std::vector<Polynomial> row;
    for (const auto &s : r)
      row.push_back(parse_polynomial(s, vars));
    entries.push_back(std::move(row));
  }
  return PolyMatrix(std::move(vars), std::move(entries));
}

} // namespace svloja::testing
