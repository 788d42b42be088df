#include "svloja/distance.hpp"

#include <cmath>
#include <limits>

#include "svloja/errors.hpp"
#include "svloja/format.hpp"
#include "svloja/sampling.hpp"

namespace svloja {

ZeroSetProjector::ZeroSetProjector(std::vector<PolyMatrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty())
    throw Error("zero-set projector needs at least one matrix");
  const std::size_t n = matrices_.front().num_vars();
  for (const auto &m : matrices_) {
    if (m.num_vars() != n)
      throw DimensionError("matrices disagree on the number of variables");
    std::vector<std::vector<std::vector<Polynomial>>> g(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t c = 0; c < m.cols(); ++c)
        g[i].push_back(m.entry(i, c).gradient());
    entry_grads_.push_back(std::move(g));
  }
}

double ZeroSetProjector::residual(std::span<const double> x) const {
  double r = 0.0;
  for (const auto &m : matrices_)
    r = std::max(r, smallest_singular_value(m, x));
  return r;
}

double ZeroSetProjector::phi(std::span<const double> x) const {
  for (double v : x)
    if (!std::isfinite(v))
      return std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto &m : matrices_) {
    const Matrix g = m.gram(x);
    if (!g.all_finite())
      return std::numeric_limits<double>::infinity();
    total += std::max(sym_eig(g).values.front(), 0.0);
  }
  return total;
}

ZeroSetProjector::Local ZeroSetProjector::local(std::span<const double> x,
                                                double eig_tol) const {
  Local l;
  for (const auto &m : matrices_) {
    const Matrix g = m.gram(x);
    const auto eig = sym_eig(g);
    l.phi += std::max(eig.values.front(), 0.0);
    l.bases.push_back(min_eigenspace(eig, g.frobenius_norm(), eig_tol));
  }
  return l;
}

namespace {

// Minimum-norm solution of J δ = -r through the eigen-decomposition of
// J^T J, dropping directions below a relative cutoff.
Vector gauss_newton_step(const Matrix &jac, const Vector &r) {
  const std::size_t n = jac.cols();
  Matrix jtj(n, n);
  Vector jtr(n, 0.0);
  for (std::size_t a = 0; a < jac.rows(); ++a)
    for (std::size_t k = 0; k < n; ++k) {
      jtr[k] += jac(a, k) * r[a];
      for (std::size_t l = 0; l < n; ++l)
        jtj(k, l) += jac(a, k) * jac(a, l);
    }
  Vector step(n, 0.0);
  if (!jtj.all_finite())
    return step;
  const auto eig = sym_eig(jtj);
  const double top = eig.values.back();
  if (!(top > 0.0))
    return step;
  for (std::size_t e = 0; e < n; ++e) {
    const double lam = eig.values[e];
    if (lam <= 1e-14 * top)
      continue;
    const Vector v = eig.vectors.column(e);
    const double c = -dot(v, jtr) / lam;
    for (std::size_t k = 0; k < n; ++k)
      step[k] += c * v[k];
  }
  return step;
}

} // namespace

std::optional<Vector>
ZeroSetProjector::project(std::span<const double> start,
                          const DistanceOptions &opts) const {
  const std::size_t n = num_vars();
  if (start.size() != n)
    throw DimensionError("point dimension does not match the matrix");
  const double target = opts.zero_tol * opts.zero_tol;
  Vector x(start.begin(), start.end());
  int polish = -1; // -1 until the target is reached
  const int total = opts.max_iterations + opts.polish_iterations;

  for (int it = 0; it < total; ++it) {
    const Local l = local(x, opts.eigenspace_tol);
    if (polish < 0 && l.phi <= target && residual(x) <= opts.zero_tol)
      polish = 0;
    if (polish >= opts.polish_iterations || l.phi == 0.0)
      break;
    if (polish < 0 && it >= opts.max_iterations)
      break;

    // With multiplicity the eigenvector choice matters; try a few.
    std::size_t variants = 1;
    for (const auto &b : l.bases)
      variants = std::max(variants, b.cols());
    variants = std::min<std::size_t>(variants, 4);

    bool moved = false;
    for (std::size_t v = 0; v < variants && !moved; ++v) {
      std::size_t rows = 0;
      for (const auto &m : matrices_)
        rows += m.cols();
      Matrix jac(rows, n);
      Vector r(rows, 0.0);
      std::size_t row = 0;
      for (std::size_t j = 0; j < matrices_.size(); ++j) {
        const PolyMatrix &m = matrices_[j];
        const Vector y = l.bases[j].column(v % l.bases[j].cols());
        for (std::size_t c = 0; c < m.cols(); ++c, ++row)
          for (std::size_t i = 0; i < m.rows(); ++i) {
            if (y[i] == 0.0)
              continue;
            r[row] += y[i] * m.entry(i, c).evaluate(x);
            for (std::size_t k = 0; k < n; ++k)
              jac(row, k) += y[i] * entry_grads_[j][i][c][k].evaluate(x);
          }
      }
      const Vector step = gauss_newton_step(jac, r);
      if (norm(step) == 0.0)
        continue;
      double t = 1.0;
      for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
        Vector trial(n);
        for (std::size_t k = 0; k < n; ++k)
          trial[k] = x[k] + t * step[k];
        if (phi(trial) < l.phi) {
          x = std::move(trial);
          moved = true;
          break;
        }
      }
    }
    if (!moved)
      break;
    if (polish >= 0)
      ++polish;
  }
  if (residual(x) <= opts.zero_tol)
    return x;
  return std::nullopt;
}

DistanceEstimate ZeroSetProjector::distance(std::span<const double> x,
                                            const DistanceOptions &opts) const {
  for (double v : x)
    if (!std::isfinite(v))
      throw NumericalError("distance query has a non-finite coordinate");
  if (x.size() != num_vars())
    throw DimensionError("point dimension does not match the matrix");

  std::optional<Vector> best = project(x, opts);
  double best_d = best ? svloja::distance(x, *best)
                       : std::numeric_limits<double>::infinity();
  Rng rng(opts.seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < opts.restarts; ++k) {
    const double scale = 0.1 * std::ldexp(1.0, k);
    Vector s(x.begin(), x.end());
    for (auto &c : s)
      c += scale * normal(rng);
    if (auto w = project(s, opts)) {
      const double d = svloja::distance(x, *w);
      if (d < best_d) {
        best_d = d;
        best = std::move(w);
      }
    }
  }
  if (!best)
    throw NoZeroFound("descent from the query and " +
                      std::to_string(opts.restarts) +
                      " perturbed starts found no point with f <= " +
                      format_double(opts.zero_tol));

  // A descent may overshoot to a far component; re-project points on the
  // segment towards the query.
  double t = 0.5;
  for (int i = 0; i < opts.tighten_steps; ++i, t *= 0.5) {
    Vector s(x.size());
    for (std::size_t k = 0; k < s.size(); ++k)
      s[k] = x[k] + t * ((*best)[k] - x[k]);
    if (auto w = project(s, opts)) {
      const double d = svloja::distance(x, *w);
      if (d < best_d) {
        best_d = d;
        best = std::move(w);
      }
    }
  }
  return {best_d, std::move(*best), opts.restarts};
}

DistanceEstimate estimate_distance_to_zero_set(const PolyMatrix &f,
                                               std::span<const double> x,
                                               const DistanceOptions &opts) {
  return ZeroSetProjector({f}).distance(x, opts);
}

DistanceEstimate
estimate_distance_to_intersection(const PolyMatrix &f, const PolyMatrix &g,
                                  std::span<const double> x,
                                  const DistanceOptions &opts) {
  return ZeroSetProjector({f, g}).distance(x, opts);
}

} // namespace svloja
