#include "svloja/subdiff.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "svloja/errors.hpp"

namespace svloja {

AuxiliarySetup::AuxiliarySetup(PolyMatrix f, double base_value)
    : f_(std::move(f)), base_value_(base_value),
      gram_polys_(f_.gram_polynomials()) {
  if (!(base_value_ >= 0.0) || !std::isfinite(base_value_))
    throw Error("base value must be a finite non-negative number");
  const std::size_t p = f_.rows();
  gram_grads_.assign(p, std::vector<std::vector<Polynomial>>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      gram_grads_[i][j] = gram_polys_[i][j].gradient();
}

AuxiliarySetup AuxiliarySetup::at_base_point(PolyMatrix f,
                                             std::span<const double> base) {
  const double b = smallest_singular_value(f, base);
  return AuxiliarySetup(std::move(f), b);
}

std::vector<Matrix>
AuxiliarySetup::gram_jacobian(std::span<const double> x) const {
  if (x.size() != num_vars())
    throw DimensionError("point dimension does not match the matrix");
  const std::size_t p = rows(), n = num_vars();
  std::vector<Matrix> d(n, Matrix(p, p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double v = gram_grads_[i][j][k].evaluate(x);
        d[k](i, j) = d[k](j, i) = v;
      }
  return d;
}

namespace {

void check_y(const AuxiliarySetup &setup, std::span<const double> y) {
  if (y.size() != setup.rows())
    throw DimensionError("y has " + std::to_string(y.size()) +
                         " entries, matrix has " +
                         std::to_string(setup.rows()) + " rows");
}

double quad_form(const Matrix &m, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      s += y[i] * m(i, j) * y[j];
  return s;
}

double grad_norm(const std::vector<Matrix> &jac, std::span<const double> y) {
  double s = 0.0;
  for (const auto &d : jac) {
    const double c = quad_form(d, y);
    s += c * c;
  }
  return std::sqrt(s);
}

Vector combine(const Matrix &basis, std::span<const double> u) {
  return basis * u;
}

struct Spectrum {
  EigenDecomposition eig;
  double gram_norm;
  double sigma;
};

Spectrum spectrum(const AuxiliarySetup &setup, std::span<const double> x) {
  const Matrix g = setup.matrix().gram(x);
  Spectrum s{sym_eig(g), g.frobenius_norm(), 0.0};
  s.sigma = sigma_from_gram(s.eig, s.gram_norm);
  return s;
}

// Minimises ‖∇_x g(x, B u)‖ over unit u in R^m by uniform sampling.
SlopeEstimate sample_eigenspace(const std::vector<Matrix> &jac,
                                const Matrix &basis,
                                const SlopeOptions &opts) {
  const std::size_t m = basis.cols();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  SlopeEstimate best;
  best.value = std::numeric_limits<double>::infinity();
  best.exact = false;
  best.multiplicity = m;
  Vector u(m), best_u;
  for (int s = 0; s < opts.sphere_samples; ++s) {
    double len = 0.0;
    do {
      for (auto &c : u)
        c = normal(rng);
      len = norm(u);
    } while (len == 0.0);
    for (auto &c : u)
      c /= len;
    const Vector y = combine(basis, u);
    const double v = grad_norm(jac, y);
    if (v < best.value) {
      best.value = v;
      best.witness_y = y;
      best_u = u;
    }
  }
  best.samples_used = opts.sphere_samples;

  if (m == 2) {
    // golden-section search on the circle around the best sample
    const double centre = std::atan2(best_u[1], best_u[0]);
    const double half =
        std::min(std::numbers::pi / 2,
                 8.0 * std::numbers::pi / std::max(1, opts.sphere_samples));
    auto at = [&](double t) {
      const double uu[2] = {std::cos(t), std::sin(t)};
      return combine(basis, uu);
    };
    auto h = [&](double t) { return grad_norm(jac, at(t)); };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = centre - half, b = centre + half;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double hc = h(c), hd = h(d);
    for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
      if (hc < hd) {
        b = d;
        d = c;
        hd = hc;
        c = b - inv_phi * (b - a);
        hc = h(c);
      } else {
        a = c;
        c = d;
        hc = hd;
        d = a + inv_phi * (b - a);
        hd = h(d);
      }
    }
    const double t = 0.5 * (a + b);
    const double ht = h(t);
    if (ht < best.value) {
      best.value = ht;
      best.witness_y = at(t);
    }
  }
  return best;
}

SlopeEstimate slope_tilde_from(const AuxiliarySetup &setup,
                               std::span<const double> x, const Spectrum &sp,
                               const SlopeOptions &opts) {
  if (opts.sphere_samples < 1)
    throw Error("sphere_samples must be at least 1");
  const Matrix basis =
      min_eigenspace(sp.eig, sp.gram_norm, opts.eigenspace_tol);
  const auto jac = setup.gram_jacobian(x);
  SlopeEstimate est;
  if (basis.cols() == 1) {
    est.witness_y = basis.column(0);
    est.value = grad_norm(jac, est.witness_y);
    est.exact = true;
    est.samples_used = 1;
    est.multiplicity = 1;
  } else {
    est = sample_eigenspace(jac, basis, opts);
  }
  est.sigma = sp.sigma;
  return est;
}

} // namespace

double g_value(const AuxiliarySetup &setup, std::span<const double> x,
               std::span<const double> y) {
  check_y(setup, y);
  if (x.size() != setup.num_vars())
    throw DimensionError("point dimension does not match the matrix");
  const auto &gp = setup.gram_polys();
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      s += y[i] * y[j] * gp[i][j].evaluate(x);
  const double b = setup.base_value();
  return s - b * b * dot(y, y);
}

double f_tilde(const AuxiliarySetup &setup, std::span<const double> x) {
  const double f = smallest_singular_value(setup.matrix(), x);
  const double b = setup.base_value();
  return f * f - b * b;
}

Vector grad_x_g(const AuxiliarySetup &setup, std::span<const double> x,
                std::span<const double> y) {
  check_y(setup, y);
  const auto jac = setup.gram_jacobian(x);
  Vector out(jac.size());
  for (std::size_t k = 0; k < jac.size(); ++k)
    out[k] = quad_form(jac[k], y);
  return out;
}

Vector grad_y_g(const AuxiliarySetup &setup, std::span<const double> x,
                std::span<const double> y) {
  check_y(setup, y);
  const Matrix g = setup.matrix().gram(x);
  Vector out = g * y;
  const double b2 = setup.base_value() * setup.base_value();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 2.0 * out[i] - 2.0 * b2 * y[i];
  return out;
}

MinimizerSet minimizer_set(const AuxiliarySetup &setup,
                           std::span<const double> x, double tol) {
  const Matrix g = setup.matrix().gram(x);
  const auto eig = sym_eig(g);
  MinimizerSet ms;
  ms.basis = min_eigenspace(eig, g.frobenius_norm(), tol);
  ms.multiplicity = ms.basis.cols();
  ms.lambda_min = eig.values.front();
  return ms;
}

SlopeEstimate slope_f_tilde(const AuxiliarySetup &setup,
                            std::span<const double> x,
                            const SlopeOptions &opts) {
  return slope_tilde_from(setup, x, spectrum(setup, x), opts);
}

SlopeEstimate slope_f(const AuxiliarySetup &setup, std::span<const double> x,
                      const SlopeOptions &opts) {
  const Spectrum sp = spectrum(setup, x);
  if (sp.sigma <= opts.zero_tol) {
    // global minimum of f >= 0, so 0 is a subgradient
    const Matrix basis =
        min_eigenspace(sp.eig, sp.gram_norm, opts.eigenspace_tol);
    SlopeEstimate est;
    est.value = 0.0;
    est.multiplicity = basis.cols();
    est.exact = est.multiplicity == 1;
    est.samples_used = 0;
    est.witness_y = basis.column(0);
    est.sigma = sp.sigma;
    return est;
  }
  SlopeEstimate est = slope_tilde_from(setup, x, sp, opts);
  est.value /= 2.0 * sp.sigma;
  return est;
}

std::optional<Vector> smooth_gradient(const AuxiliarySetup &setup,
                                      std::span<const double> x,
                                      const SlopeOptions &opts) {
  const Spectrum sp = spectrum(setup, x);
  if (sp.sigma <= opts.zero_tol)
    return std::nullopt;
  const Matrix basis =
      min_eigenspace(sp.eig, sp.gram_norm, opts.eigenspace_tol);
  if (basis.cols() != 1)
    return std::nullopt;
  Vector grad = grad_x_g(setup, x, basis.column(0));
  for (auto &c : grad)
    c /= 2.0 * sp.sigma;
  return grad;
}

} // namespace svloja
