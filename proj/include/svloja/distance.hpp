#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "svloja/dense.hpp"
#include "svloja/polymatrix.hpp"
#include "svloja/numlin.hpp"

namespace svloja {

struct DistanceOptions {
  double zero_tol = 1e-8; // a witness needs f(w) <= zero_tol
  int restarts = 16;
  int max_iterations = 200;
  int polish_iterations = 50;
  int tighten_steps = 12;
  double eigenspace_tol = kDefaultEigenspaceTol;
  std::uint64_t seed = 0;
};

struct DistanceEstimate {
  double value = 0.0;
  Vector witness;
  int restarts_used = 0;
};

// Local search for common zeros of one or more matrices. Descends
// φ(x) = Σ_j λ_min(F_j F_j^T)(x) by minimum-norm Gauss-Newton steps on the
// stacked residuals y_j^T F_j(x), y_j a unit λ_min-eigenvector.
class ZeroSetProjector {
public:
  explicit ZeroSetProjector(std::vector<PolyMatrix> matrices);

  std::size_t num_vars() const noexcept { return matrices_.front().num_vars(); }

  // max_j f_j(x)
  double residual(std::span<const double> x) const;

  // Common zero reached from start, or nullopt when the descent stalls.
  std::optional<Vector> project(std::span<const double> start,
                                const DistanceOptions &opts) const;

  // Nearest common zero found by multi-start descent plus bisection-style
  // tightening along the segment to the query. Throws NoZeroFound.
  DistanceEstimate distance(std::span<const double> x,
                            const DistanceOptions &opts) const;

private:
  struct Local {
    double phi = 0.0;
    std::vector<Matrix> bases; // one λ_min-eigenbasis per matrix
  };
  Local local(std::span<const double> x, double eig_tol) const;
  double phi(std::span<const double> x) const;

  std::vector<PolyMatrix> matrices_;
  // entry_grads_[j][i][c][k] = ∂_k F_j(i, c)
  std::vector<std::vector<std::vector<std::vector<Polynomial>>>> entry_grads_;
};

// dist(x, S_F)
DistanceEstimate estimate_distance_to_zero_set(const PolyMatrix &f,
                                               std::span<const double> x,
                                               const DistanceOptions &opts = {});

// dist(x, S_F ∩ S_G)
DistanceEstimate
estimate_distance_to_intersection(const PolyMatrix &f, const PolyMatrix &g,
                                  std::span<const double> x,
                                  const DistanceOptions &opts = {});

} // namespace svloja
