#include "svloja/numlin.hpp"

#include <algorithm>
#include <numeric>

#include "svloja/errors.hpp"

namespace svloja {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-14;

double off_diagonal_norm(const Matrix &a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j)
        s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

} // namespace

EigenDecomposition sym_eig(const Matrix &s) {
  if (s.rows() != s.cols())
    throw DimensionError("eigensolver needs a square matrix");
  if (!s.all_finite())
    throw NumericalError("non-finite entry in symmetric eigenproblem");
  const std::size_t n = s.rows();
  const double scale = s.frobenius_norm();

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(s(i, j) - s(j, i)) > 1e-8 * (1.0 + scale))
        throw NumericalError("matrix is not symmetric");
      a(i, j) = 0.5 * (s(i, j) + s(j, i));
    }
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalTol * scale)
      break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0)
          continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) < a(j, j);
  });
  EigenDecomposition out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, k) = v(i, order[k]);
  }
  if (!out.vectors.all_finite())
    throw NumericalError("eigensolver produced non-finite vectors");
  return out;
}

double sigma_from_gram(const EigenDecomposition &eig, double gram_norm) {
  const double lambda = eig.values.front();
  if (lambda >= 0.0)
    return std::sqrt(lambda);
  if (lambda >= -kClampSlack * (1.0 + gram_norm))
    return 0.0;
  throw NumericalError("Gram matrix has a clearly negative eigenvalue");
}

double smallest_singular_value(const PolyMatrix &f,
                               std::span<const double> x) {
  const Matrix g = f.gram(x);
  return sigma_from_gram(sym_eig(g), g.frobenius_norm());
}

Matrix min_eigenspace(const EigenDecomposition &eig, double s_norm,
                      double rel_tol) {
  if (!(rel_tol > 0.0))
    throw Error("eigenspace tolerance must be positive");
  const double cutoff = eig.values.front() + rel_tol * (1.0 + s_norm);
  std::size_t m = 1;
  while (m < eig.values.size() && eig.values[m] <= cutoff)
    ++m;
  Matrix basis(eig.vectors.rows(), m);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t k = 0; k < m; ++k)
      basis(i, k) = eig.vectors(i, k);
  return basis;
}

Matrix min_eigenspace(const Matrix &s, double rel_tol) {
  return min_eigenspace(sym_eig(s), s.frobenius_norm(), rel_tol);
}

} // namespace svloja
