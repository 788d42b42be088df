#pragma once

#include <span>

#include "svloja/dense.hpp"
#include "svloja/polymatrix.hpp"

namespace svloja {

struct EigenDecomposition {
  Vector values;  // ascending
  Matrix vectors; // column k pairs with values[k]
};

// Cyclic Jacobi. Symmetrises its input; stops once the off-diagonal
// Frobenius mass drops to 1e-14·‖S‖_F or after 100 sweeps.
EigenDecomposition sym_eig(const Matrix &s);

// Relative slack for the PSD clamp: λ_min >= -kClampSlack·(1 + ‖S‖_F) is
// treated as 0.
inline constexpr double kClampSlack = 1e-9;
inline constexpr double kDefaultEigenspaceTol = 1e-8;

// sqrt of the clamped smallest eigenvalue of a Gram matrix.
double sigma_from_gram(const EigenDecomposition &eig, double gram_norm);

// σ_min(F(x)) = sqrt(λ_min(F(x)F(x)^T)).
double smallest_singular_value(const PolyMatrix &f, std::span<const double> x);

// Orthonormal basis (p×m, m >= 1) of eigenvectors whose eigenvalue lies
// within rel_tol·(1 + ‖S‖_F) of the smallest one.
Matrix min_eigenspace(const Matrix &s, double rel_tol = kDefaultEigenspaceTol);
Matrix min_eigenspace(const EigenDecomposition &eig, double s_norm,
                      double rel_tol);

} // namespace svloja
