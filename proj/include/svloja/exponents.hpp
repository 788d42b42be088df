#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace svloja {

// Arbitrary-precision non-negative integer.
class BigNat {
public:
  using Rep = boost::multiprecision::cpp_int;

  BigNat() = default;
  BigNat(std::uint64_t v) : v_(v) {} // NOLINT(google-explicit-constructor)
  explicit BigNat(Rep v);

  static BigNat pow(const BigNat &base, std::uint32_t exponent);
  static BigNat gcd(const BigNat &a, const BigNat &b);

  const Rep &rep() const noexcept { return v_; }
  std::string to_string() const { return v_.str(); }
  bool is_zero() const { return v_.is_zero(); }

  friend BigNat operator+(const BigNat &a, const BigNat &b) {
    return BigNat(a.v_ + b.v_);
  }
  // Throws when b > a.
  friend BigNat operator-(const BigNat &a, const BigNat &b);
  friend BigNat operator*(const BigNat &a, const BigNat &b) {
    return BigNat(a.v_ * b.v_);
  }
  // Exact division; throws when b does not divide a.
  BigNat divide_exact(const BigNat &b) const;

  friend bool operator==(const BigNat &a, const BigNat &b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const BigNat &a, const BigNat &b) {
    return a.v_ < b.v_   ? std::strong_ordering::less
           : b.v_ < a.v_ ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

private:
  Rep v_;
};

enum class BoundKind {
  gradient,
  gradient_at_zero,
  error_bound,
  separation,
  factorization,
  global_separation,
  global_loja,
};

std::string_view to_string(BoundKind kind);
BoundKind bound_kind_from_string(std::string_view name);

// Exact rational exponent in lowest terms plus its rounded double value.
struct ExponentBound {
  BigNat numerator;
  BigNat denominator{1};
  BoundKind kind = BoundKind::gradient;
  double as_float = 0.0;

  std::string fraction() const;
  bool operator==(const ExponentBound &) const = default;

  // Reduces num/den and fills in as_float.
  static ExponentBound make(BigNat num, BigNat den, BoundKind kind);
};

// d(3d - 3)^(n-1) for d >= 2, 1 for d = 1.
BigNat capital_R(std::uint32_t n, std::uint32_t d);

// 1 - 1/R(n+p, 2d+2)
ExponentBound gradient_exponent(std::uint32_t n, std::uint32_t p,
                                std::uint32_t d);
// 1 - 2/R(n+p, 2d+2), valid when f(x̄) = 0
ExponentBound gradient_exponent_at_zero(std::uint32_t n, std::uint32_t p,
                                        std::uint32_t d);
// 2/R(n+p, 2d+2)
ExponentBound error_bound_exponent(std::uint32_t n, std::uint32_t p,
                                   std::uint32_t d);
// 2/R(n+p1+p2, 2d+2)
ExponentBound separation_exponent(std::uint32_t n, std::uint32_t p1,
                                  std::uint32_t p2, std::uint32_t d);
// 2/R(n+p1+p3, 2d+2)
ExponentBound factorization_exponent(std::uint32_t n, std::uint32_t p1,
                                     std::uint32_t p3, std::uint32_t d);
// R(n+p1+p2, 2d+2)/2
ExponentBound global_separation_exponent(std::uint32_t n, std::uint32_t p1,
                                         std::uint32_t p2, std::uint32_t d);
// R(n+p+2, 4d+2)/4
ExponentBound global_loja_exponent(std::uint32_t n, std::uint32_t p,
                                   std::uint32_t d);

// Exponent value a/b in extended precision.
long double exponent_value(const ExponentBound &e);

// t^(a/b) computed as exp((a/b)·ln t); 0 at t = 0. Negative t is rejected.
double power(double t, const ExponentBound &e);
// (a/b)·ln t in extended precision; -inf at t = 0.
long double log_power(double t, const ExponentBound &e);

} // namespace svloja
