#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svloja/dense.hpp"
#include "svloja/distance.hpp"
#include "svloja/exponents.hpp"
#include "svloja/polymatrix.hpp"
#include "svloja/subdiff.hpp"

namespace svloja {

// Where and how densely an inequality is probed.
struct SamplePlan {
  std::vector<double> radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  int samples_per_radius = 200;
  std::uint64_t seed = 0;
  int sphere_samples = 512;
  unsigned workers = 1;
  double zero_tol = 1e-10;
  double eigenspace_tol = kDefaultEigenspaceTol;
  double dist_tol = 1e-8;
  int restarts = 16;

  // Throws Error unless radii are positive and strictly decreasing and
  // samples_per_radius >= 1.
  void validate() const;
  SlopeOptions slope_options(std::uint64_t index) const;
  DistanceOptions distance_options(std::uint64_t index) const;
};

std::vector<double> default_global_radii(); // 1, 10, 100, 1000

enum class Verdict { pass, fail, inconclusive };
std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

// Whether the empirical constant is the smallest or largest ratio seen.
enum class ConstantKind { min, max };

struct SampleRecord {
  double radius = 0.0;
  Vector point;
  double f = 0.0;
  std::optional<double> slope;
  std::size_t multiplicity = 0; // 0 when E(x) was not computed
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool excluded = false;  // both sides vanish, or the lhs is too small
  bool auto_pass = false; // bound underflowed in double precision

  bool operator==(const SampleRecord &) const = default;
};

struct VerificationReport {
  std::string inequality_id;
  ExponentBound exponent_used;
  ConstantKind constant_kind = ConstantKind::min;
  std::vector<SampleRecord> records;
  double empirical_constant = 0.0;
  std::size_t excluded_count = 0;
  std::size_t auto_pass_count = 0;
  std::optional<double> fitted_exponent;
  std::optional<double> fit_r_squared;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
};

struct FitResult {
  double alpha = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

struct GoodnessResult {
  bool good = false;
  bool certified = false; // always false: sampling proves nothing
  double c_hat = 0.0;
  double r_hat = 0.0;
  std::vector<double> radii;
  std::vector<double> sphere_minima;
  std::vector<std::string> notes;
};

// Per-radius minimum ratios must not fall by more than this factor per
// decade of radius across the three smallest radii.
inline constexpr double kMaxDecayPerDecade = 10.0;

// slope_f(x) >= c |f(x) - f(base)|^α on spheres around base. α is the
// at-zero exponent when use_at_zero_exponent is set (requires f(base) = 0).
VerificationReport verify_gradient_inequality(const PolyMatrix &f,
                                              std::span<const double> base,
                                              const SamplePlan &plan,
                                              bool use_at_zero_exponent);

// Least-squares slope of log slope_f against log |f - f(base)| over the
// per-radius minimal-slope samples.
FitResult fit_empirical_exponent(const PolyMatrix &f,
                                 std::span<const double> base,
                                 const SamplePlan &plan);

// c dist(x, S_F) <= f(x)^ε for x in the ball B(center, radius).
VerificationReport verify_error_bound(const PolyMatrix &f,
                                      std::span<const double> center,
                                      double radius, const SamplePlan &plan);

// c dist(x, S_F ∩ S_G) <= (dist(x, S_F) + dist(x, S_G))^ε on a ball.
VerificationReport verify_separation(const PolyMatrix &f, const PolyMatrix &g,
                                     std::span<const double> center,
                                     double radius, const SamplePlan &plan);

// g(x) <= c f(x)^ε on K = {h = 0}, sampled by projecting points of the ball
// B(center, radius) onto K. Throws InclusionViolated when a zero of f in K
// is not a zero of g.
VerificationReport verify_factorization(const PolyMatrix &f,
                                        const PolyMatrix &g,
                                        const PolyMatrix &h,
                                        std::span<const double> center,
                                        double radius, const SamplePlan &plan);

// c (dist(x, S_F) / (1 + ‖x‖²))^E <= f(x) on spheres ‖x‖ = r.
VerificationReport verify_global(const PolyMatrix &f,
                                 std::span<const double> radii,
                                 const SamplePlan &plan);

// c ‖x‖^(-E) <= f(x) for ‖x‖ >= r_big.
VerificationReport verify_compact_tail(const PolyMatrix &f,
                                       std::span<const double> radii,
                                       double r_big, const SamplePlan &plan);

// c (dist(x, S_F ∩ S_G) / (1 + ‖x‖²))^E <= dist(x, S_F) + dist(x, S_G).
VerificationReport verify_global_separation(const PolyMatrix &f,
                                            const PolyMatrix &g,
                                            std::span<const double> radii,
                                            const SamplePlan &plan);

// Minimum sampled slope on each sphere ‖x‖ = r; never certified.
GoodnessResult check_good_at_infinity(const PolyMatrix &f,
                                      std::span<const double> radii,
                                      const SamplePlan &plan);

// c dist(x, S_F) <= f(x)^ε + f(x) on all of R^n, sampled inside and outside
// the ball of radius 3 R_hat + 2‖s‖ for a found zero s.
VerificationReport verify_holder_global(const PolyMatrix &f,
                                        std::span<const double> radii,
                                        const SamplePlan &plan);

} // namespace svloja
