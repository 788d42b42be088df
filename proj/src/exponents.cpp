#include "svloja/exponents.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>

#include "svloja/errors.hpp"

namespace svloja {

namespace mp = boost::multiprecision;

BigNat::BigNat(Rep v) : v_(std::move(v)) {
  if (v_ < 0)
    throw Error("BigNat cannot hold a negative value");
}

BigNat BigNat::pow(const BigNat &base, std::uint32_t exponent) {
  return BigNat(mp::pow(base.v_, exponent));
}

BigNat BigNat::gcd(const BigNat &a, const BigNat &b) {
  return BigNat(mp::gcd(a.v_, b.v_));
}

BigNat operator-(const BigNat &a, const BigNat &b) {
  if (b.v_ > a.v_)
    throw Error("BigNat subtraction would go negative");
  return BigNat(a.v_ - b.v_);
}

BigNat BigNat::divide_exact(const BigNat &b) const {
  if (b.is_zero())
    throw Error("BigNat division by zero");
  Rep q, r;
  mp::divide_qr(v_, b.v_, q, r);
  if (!r.is_zero())
    throw Error("BigNat division is not exact");
  return BigNat(std::move(q));
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
  case BoundKind::gradient:
    return "gradient";
  case BoundKind::gradient_at_zero:
    return "gradient_at_zero";
  case BoundKind::error_bound:
    return "error_bound";
  case BoundKind::separation:
    return "separation";
  case BoundKind::factorization:
    return "factorization";
  case BoundKind::global_separation:
    return "global_separation";
  case BoundKind::global_loja:
    return "global_loja";
  }
  return "unknown";
}

BoundKind bound_kind_from_string(std::string_view name) {
  for (auto k : {BoundKind::gradient, BoundKind::gradient_at_zero,
                 BoundKind::error_bound, BoundKind::separation,
                 BoundKind::factorization, BoundKind::global_separation,
                 BoundKind::global_loja})
    if (to_string(k) == name)
      return k;
  throw Error("unknown exponent kind '" + std::string(name) + "'");
}

std::string ExponentBound::fraction() const {
  if (denominator == BigNat(1))
    return numerator.to_string();
  return numerator.to_string() + "/" + denominator.to_string();
}

ExponentBound ExponentBound::make(BigNat num, BigNat den, BoundKind kind) {
  if (den.is_zero())
    throw Error("exponent denominator must be positive");
  const BigNat g = BigNat::gcd(num, den);
  ExponentBound e;
  if (!g.is_zero() && !(g == BigNat(1))) {
    num = num.divide_exact(g);
    den = den.divide_exact(g);
  }
  e.numerator = std::move(num);
  e.denominator = std::move(den);
  e.kind = kind;
  using Float = mp::cpp_bin_float_50;
  e.as_float = (Float(e.numerator.rep()) / Float(e.denominator.rep()))
                   .convert_to<double>();
  return e;
}

BigNat capital_R(std::uint32_t n, std::uint32_t d) {
  if (n == 0 || d == 0)
    throw PreconditionError("R(n, d) needs n >= 1 and d >= 1");
  if (d == 1)
    return BigNat(1);
  return BigNat(d) * BigNat::pow(BigNat(3ull * d - 3), n - 1);
}

namespace {

void require_positive(std::initializer_list<std::uint32_t> args) {
  for (auto a : args)
    if (a == 0)
      throw PreconditionError(
          "exponent bounds need n, p and d to be at least 1");
}

} // namespace

ExponentBound gradient_exponent(std::uint32_t n, std::uint32_t p,
                                std::uint32_t d) {
  require_positive({n, p, d});
  const BigNat r = capital_R(n + p, 2 * d + 2);
  return ExponentBound::make(r - BigNat(1), r, BoundKind::gradient);
}

ExponentBound gradient_exponent_at_zero(std::uint32_t n, std::uint32_t p,
                                        std::uint32_t d) {
  require_positive({n, p, d});
  const BigNat r = capital_R(n + p, 2 * d + 2);
  return ExponentBound::make(r - BigNat(2), r, BoundKind::gradient_at_zero);
}

ExponentBound error_bound_exponent(std::uint32_t n, std::uint32_t p,
                                   std::uint32_t d) {
  require_positive({n, p, d});
  return ExponentBound::make(BigNat(2), capital_R(n + p, 2 * d + 2),
                             BoundKind::error_bound);
}

ExponentBound separation_exponent(std::uint32_t n, std::uint32_t p1,
                                  std::uint32_t p2, std::uint32_t d) {
  require_positive({n, p1, p2, d});
  return ExponentBound::make(BigNat(2), capital_R(n + p1 + p2, 2 * d + 2),
                             BoundKind::separation);
}

ExponentBound factorization_exponent(std::uint32_t n, std::uint32_t p1,
                                     std::uint32_t p3, std::uint32_t d) {
  require_positive({n, p1, p3, d});
  return ExponentBound::make(BigNat(2), capital_R(n + p1 + p3, 2 * d + 2),
                             BoundKind::factorization);
}

ExponentBound global_separation_exponent(std::uint32_t n, std::uint32_t p1,
                                         std::uint32_t p2, std::uint32_t d) {
  require_positive({n, p1, p2, d});
  return ExponentBound::make(capital_R(n + p1 + p2, 2 * d + 2), BigNat(2),
                             BoundKind::global_separation);
}

ExponentBound global_loja_exponent(std::uint32_t n, std::uint32_t p,
                                   std::uint32_t d) {
  require_positive({n, p, d});
  return ExponentBound::make(capital_R(n + p + 2, 4 * d + 2), BigNat(4),
                             BoundKind::global_loja);
}

long double exponent_value(const ExponentBound &e) {
  using Float = mp::cpp_bin_float_50;
  return (Float(e.numerator.rep()) / Float(e.denominator.rep()))
      .convert_to<long double>();
}

long double log_power(double t, const ExponentBound &e) {
  if (t < 0.0 || std::isnan(t))
    throw PreconditionError("exponent applied to a negative quantity");
  if (t == 0.0)
    return -std::numeric_limits<long double>::infinity();
  return exponent_value(e) * std::log(static_cast<long double>(t));
}

double power(double t, const ExponentBound &e) {
  const long double lp = log_power(t, e);
  if (std::isinf(lp) && lp < 0)
    return 0.0;
  return static_cast<double>(std::exp(lp));
}

} // namespace svloja
