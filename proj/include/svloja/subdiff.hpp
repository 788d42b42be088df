#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "svloja/dense.hpp"
#include "svloja/numlin.hpp"
#include "svloja/polymatrix.hpp"

namespace svloja {

// Auxiliary polynomial data for a matrix F and a base value f(x̄):
//
//   g(x, y) = Σ_ij y_i y_j <F_i(x), F_j(x)> - f(x̄)² Σ_i y_i²
//
// whose minimum over the unit sphere in y is f̃(x) = f(x)² - f(x̄)².
class AuxiliarySetup {
public:
  AuxiliarySetup(PolyMatrix f, double base_value);
  // base_value = σ_min(F(base)).
  static AuxiliarySetup at_base_point(PolyMatrix f,
                                      std::span<const double> base);

  const PolyMatrix &matrix() const noexcept { return f_; }
  double base_value() const noexcept { return base_value_; }
  std::size_t num_vars() const noexcept { return f_.num_vars(); }
  std::size_t rows() const noexcept { return f_.rows(); }

  const std::vector<std::vector<Polynomial>> &gram_polys() const noexcept {
    return gram_polys_;
  }
  // gram_grads()[i][j][k] = ∂_k <F_i, F_j>
  const std::vector<std::vector<std::vector<Polynomial>>> &
  gram_grads() const noexcept {
    return gram_grads_;
  }

  // Partial-derivative Gram matrices D_k(x) = ∂_k (F F^T)(x), k = 0..n-1, so
  // that (∇_x g(x, y))_k = y^T D_k(x) y.
  std::vector<Matrix> gram_jacobian(std::span<const double> x) const;

private:
  PolyMatrix f_;
  double base_value_;
  std::vector<std::vector<Polynomial>> gram_polys_;
  std::vector<std::vector<std::vector<Polynomial>>> gram_grads_;
};

struct MinimizerSet {
  Matrix basis; // p×m, orthonormal columns
  std::size_t multiplicity = 0;
  double lambda_min = 0.0;
};

struct SlopeOptions {
  double zero_tol = 1e-10;
  double eigenspace_tol = kDefaultEigenspaceTol;
  int sphere_samples = 512;
  std::uint64_t seed = 0;
};

struct SlopeEstimate {
  double value = 0.0;
  bool exact = true; // multiplicity == 1
  int samples_used = 0;
  Vector witness_y;
  double sigma = 0.0; // f(x)
  std::size_t multiplicity = 1;
};

double g_value(const AuxiliarySetup &setup, std::span<const double> x,
               std::span<const double> y);
double f_tilde(const AuxiliarySetup &setup, std::span<const double> x);
Vector grad_x_g(const AuxiliarySetup &setup, std::span<const double> x,
                std::span<const double> y);
Vector grad_y_g(const AuxiliarySetup &setup, std::span<const double> x,
                std::span<const double> y);

MinimizerSet minimizer_set(const AuxiliarySetup &setup,
                           std::span<const double> x,
                           double tol = kDefaultEigenspaceTol);

// min over E(x) of ‖∇_x g(x, z)‖: exact for a simple smallest eigenvalue,
// otherwise sampled over the eigenspace sphere (with a golden-section
// refinement along the circle when m = 2).
SlopeEstimate slope_f_tilde(const AuxiliarySetup &setup,
                            std::span<const double> x,
                            const SlopeOptions &opts = {});

// Slope of f = σ_min: slope_f_tilde / (2 f(x)), or 0 on the zero set.
SlopeEstimate slope_f(const AuxiliarySetup &setup, std::span<const double> x,
                      const SlopeOptions &opts = {});

// ∇f(x) where the smallest eigenvalue is simple and f(x) > zero_tol;
// std::nullopt where f is not known to be differentiable.
std::optional<Vector> smooth_gradient(const AuxiliarySetup &setup,
                                      std::span<const double> x,
                                      const SlopeOptions &opts = {});

} // namespace svloja
