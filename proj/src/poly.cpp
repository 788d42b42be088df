#include "svloja/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "svloja/errors.hpp"

namespace svloja {

Monomial Monomial::variable(std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> e(n, 0);
  e.at(k) = 1;
  return Monomial(std::move(e));
}

std::uint32_t Monomial::degree() const noexcept {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0u);
}

Monomial Monomial::operator*(const Monomial &other) const {
  if (other.size() != size())
    throw DimensionError("monomial variable counts differ");
  std::vector<std::uint32_t> e(exponents_);
  for (std::size_t k = 0; k < e.size(); ++k)
    e[k] += other.exponents_[k];
  return Monomial(std::move(e));
}

bool GrlexLess::operator()(const Monomial &a, const Monomial &b) const {
  const auto da = a.degree(), db = b.degree();
  if (da != db)
    return da < db;
  return a.exponents() < b.exponents();
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t n, double c) {
  return PolynomialBuilder(n).add_term(Monomial::one(n), c).build();
}

Polynomial Polynomial::variable(std::size_t n, std::size_t k) {
  return PolynomialBuilder(n).add_term(Monomial::variable(n, k), 1.0).build();
}

std::uint32_t Polynomial::degree() const noexcept {
  // terms_ is sorted by descending degree
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

double Polynomial::coefficient(const Monomial &m) const {
  for (const auto &t : terms_)
    if (t.monomial == m)
      return t.coefficient;
  return 0.0;
}

namespace {

double ipow(double x, std::uint32_t e) {
  double r = 1.0;
  while (e) {
    if (e & 1u)
      r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

} // namespace

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != n_)
    throw DimensionError("point has " + std::to_string(x.size()) +
                         " coordinates, polynomial has " +
                         std::to_string(n_) + " variables");
  double sum = 0.0;
  for (const auto &t : terms_) {
    double v = t.coefficient;
    for (std::size_t k = 0; k < n_; ++k)
      if (t.monomial[k])
        v *= ipow(x[k], t.monomial[k]);
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t k) const {
  if (k >= n_)
    throw DimensionError("derivative index out of range");
  PolynomialBuilder b(n_);
  for (const auto &t : terms_) {
    const auto e = t.monomial[k];
    if (e == 0)
      continue;
    auto exps = t.monomial.exponents();
    exps[k] -= 1;
    b.add_term(Monomial(std::move(exps)), t.coefficient * e);
  }
  return b.build();
}

std::vector<Polynomial> Polynomial::gradient() const {
  std::vector<Polynomial> g;
  g.reserve(n_);
  for (std::size_t k = 0; k < n_; ++k)
    g.push_back(derivative(k));
  return g;
}

// ---------------------------------------------------------------------------

PolynomialBuilder &PolynomialBuilder::add_term(const Monomial &m, double c) {
  if (m.size() != n_)
    throw DimensionError("monomial has " + std::to_string(m.size()) +
                         " exponents, expected " + std::to_string(n_));
  acc_[m] += c;
  return *this;
}

PolynomialBuilder &PolynomialBuilder::add(const Polynomial &p, double scale) {
  if (p.num_vars() != n_)
    throw DimensionError("polynomial variable counts differ");
  for (const auto &t : p.terms())
    acc_[t.monomial] += scale * t.coefficient;
  return *this;
}

Polynomial PolynomialBuilder::build() const {
  Polynomial p(n_);
  for (auto it = acc_.rbegin(); it != acc_.rend(); ++it)
    if (it->second != 0.0)
      p.terms_.push_back(Term{it->first, it->second});
  return p;
}

Polynomial add(const Polynomial &p, const Polynomial &q) {
  return PolynomialBuilder(p.num_vars()).add(p).add(q).build();
}

Polynomial sub(const Polynomial &p, const Polynomial &q) {
  return PolynomialBuilder(p.num_vars()).add(p).add(q, -1.0).build();
}

Polynomial scale(const Polynomial &p, double c) {
  return PolynomialBuilder(p.num_vars()).add(p, c).build();
}

Polynomial mul(const Polynomial &p, const Polynomial &q) {
  if (p.num_vars() != q.num_vars())
    throw DimensionError("polynomial variable counts differ");
  PolynomialBuilder b(p.num_vars());
  for (const auto &s : p.terms())
    for (const auto &t : q.terms())
      b.add_term(s.monomial * t.monomial, s.coefficient * t.coefficient);
  return b.build();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  Parser(std::string_view text, std::span<const std::string> vars)
      : text_(text), vars_(vars), builder_(vars.size()) {}

  Polynomial run() {
    skip_ws();
    if (at_end())
      throw ParseError("empty expression", pos_);
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    term(negate);
    for (;;) {
      skip_ws();
      if (at_end())
        break;
      const char c = peek();
      if (c != '+' && c != '-')
        throw ParseError(std::string("unexpected character '") + c + "'",
                         pos_);
      ++pos_;
      term(c == '-');
    }
    return builder_.build();
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      ++pos_;
  }

  void term(bool negate) {
    skip_ws();
    // one optional sign on the term itself, e.g. "x + -2*y"
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      negate ^= peek() == '-';
      ++pos_;
    }
    double coeff = negate ? -1.0 : 1.0;
    std::vector<std::uint32_t> exps(vars_.size(), 0);
    for (;;) {
      atom(coeff, exps);
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    builder_.add_term(Monomial(std::move(exps)), coeff);
  }

  void atom(double &coeff, std::vector<std::uint32_t> &exps) {
    skip_ws();
    if (at_end())
      throw ParseError("expected a number or variable", pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = number();
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        const double den = number();
        if (den == 0.0)
          throw ParseError("zero denominator in rational literal", at);
        value /= den;
      }
      coeff *= value;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end())
        throw ParseError("unknown variable '" + std::string(name) + "'",
                         start);
      std::uint32_t power = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        power = exponent();
      }
      exps[static_cast<std::size_t>(it - vars_.begin())] += power;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  double number() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
    if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        ++pos_;
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-'))
        ++look;
      if (look < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          ++pos_;
      }
    }
    double value = 0.0;
    const char *first = text_.data() + start;
    const char *last = text_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ParseError("malformed number", start);
    if (!std::isfinite(value))
      throw ParseError("number out of range", start);
    return value;
  }

  std::uint32_t exponent() {
    const std::size_t start = pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("exponent must be a non-negative integer", start);
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
    if (!at_end() && (peek() == '.' || peek() == 'e' || peek() == 'E'))
      throw ParseError("exponent must be a non-negative integer", start);
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start,
                                           text_.data() + pos_, value);
    if (ec != std::errc())
      throw ParseError("exponent out of range", start);
    return value;
  }

  std::string_view text_;
  std::span<const std::string> vars_;
  PolynomialBuilder builder_;
  std::size_t pos_ = 0;
};

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

} // namespace

Polynomial parse_polynomial(std::string_view text,
                            std::span<const std::string> variables) {
  if (variables.empty())
    throw Error("variable list must not be empty");
  for (std::size_t i = 0; i < variables.size(); ++i)
    for (std::size_t j = i + 1; j < variables.size(); ++j)
      if (variables[i] == variables[j])
        throw Error("duplicate variable name '" + variables[i] + "'");
  return Parser(text, variables).run();
}

std::string render(const Polynomial &p,
                   std::span<const std::string> variables) {
  if (variables.size() != p.num_vars())
    throw DimensionError("variable name count does not match polynomial");
  if (p.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto &t : p.terms()) {
    double c = t.coefficient;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      c = std::fabs(c);
    }
    first = false;
    std::string factors;
    for (std::size_t k = 0; k < p.num_vars(); ++k) {
      const auto e = t.monomial[k];
      if (e == 0)
        continue;
      if (!factors.empty())
        factors += "*";
      factors += variables[k];
      if (e > 1)
        factors += "^" + std::to_string(e);
    }
    if (factors.empty())
      out += shortest(c);
    else if (c == 1.0)
      out += factors;
    else
      out += shortest(c) + "*" + factors;
  }
  return out;
}

} // namespace svloja
