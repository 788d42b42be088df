#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace svloja {

// Exponent vector of a monomial; one entry per variable.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exponents)
      : exponents_(std::move(exponents)) {}

  static Monomial one(std::size_t n) {
    return Monomial(std::vector<std::uint32_t>(n, 0));
  }
  static Monomial variable(std::size_t n, std::size_t k);

  std::size_t size() const noexcept { return exponents_.size(); }
  std::uint32_t operator[](std::size_t k) const { return exponents_[k]; }
  const std::vector<std::uint32_t> &exponents() const noexcept {
    return exponents_;
  }
  std::uint32_t degree() const noexcept;

  Monomial operator*(const Monomial &other) const;
  bool operator==(const Monomial &) const = default;

private:
  std::vector<std::uint32_t> exponents_;
};

// Graded lexicographic order: total degree first, then lexicographic on the
// exponent vector.
struct GrlexLess {
  bool operator()(const Monomial &a, const Monomial &b) const;
};

struct Term {
  Monomial monomial;
  double coefficient;
  bool operator==(const Term &) const = default;
};

class PolynomialBuilder;

// Sparse real polynomial in n variables. Immutable once built. Terms are
// stored in descending graded-lex order with no zero coefficients.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::size_t n) : n_(n) {}

  static Polynomial constant(std::size_t n, double c);
  static Polynomial variable(std::size_t n, std::size_t k);

  std::size_t num_vars() const noexcept { return n_; }
  const std::vector<Term> &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  // 0 for the zero polynomial; check is_zero() to tell it from a constant.
  std::uint32_t degree() const noexcept;

  double coefficient(const Monomial &m) const;

  double evaluate(std::span<const double> x) const;
  std::vector<Polynomial> gradient() const;
  Polynomial derivative(std::size_t k) const;

  bool operator==(const Polynomial &) const = default;

private:
  friend class PolynomialBuilder;
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

// Accumulates terms, merging duplicates; build() prunes exact zeros.
class PolynomialBuilder {
public:
  explicit PolynomialBuilder(std::size_t n) : n_(n) {}

  PolynomialBuilder &add_term(const Monomial &m, double c);
  PolynomialBuilder &add(const Polynomial &p, double scale = 1.0);
  Polynomial build() const;

private:
  std::size_t n_;
  std::map<Monomial, double, GrlexLess> acc_;
};

Polynomial add(const Polynomial &p, const Polynomial &q);
Polynomial sub(const Polynomial &p, const Polynomial &q);
Polynomial mul(const Polynomial &p, const Polynomial &q);
Polynomial scale(const Polynomial &p, double c);

inline Polynomial operator+(const Polynomial &p, const Polynomial &q) {
  return add(p, q);
}
inline Polynomial operator-(const Polynomial &p, const Polynomial &q) {
  return sub(p, q);
}
inline Polynomial operator*(const Polynomial &p, const Polynomial &q) {
  return mul(p, q);
}

// Grammar: terms joined by '+'/'-'; a term is a '*'-separated product of
// decimal or rational (a/b) literals and factors `name` or `name^k`.
Polynomial parse_polynomial(std::string_view text,
                            std::span<const std::string> variables);

// Inverse of parse_polynomial: shortest round-trip coefficients, terms in
// descending graded-lex order.
std::string render(const Polynomial &p, std::span<const std::string> variables);

} // namespace svloja
