#include "svloja/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svloja/errors.hpp"
#include "svloja/format.hpp"
#include "svloja/numlin.hpp"
#include "svloja/sampling.hpp"

namespace svloja {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kGradientExclusion = 1e-14;
constexpr double kDistanceExclusion = 1e-12;
constexpr double kInclusionTol = 1e-6;

// Stream tags keep the per-sample generators for different purposes apart.
constexpr std::uint64_t kPointStream = 0x706f696e74ULL;
constexpr std::uint64_t kSlopeStream = 0x736c6f7065ULL;
constexpr std::uint64_t kDistStream = 0x64697374ULL;
constexpr std::uint64_t kPreconditionIndex = ~std::uint64_t{0};

Rng point_rng(const SamplePlan &plan, std::uint64_t index) {
  return sample_rng(derive_seed(plan.seed, kPointStream), index);
}

void require_same_vars(std::initializer_list<const PolyMatrix *> ms) {
  const std::size_t n = (*ms.begin())->num_vars();
  for (const auto *m : ms)
    if (m->num_vars() != n)
      throw DimensionError("matrices disagree on the number of variables");
}

void require_point(const PolyMatrix &f, std::span<const double> x,
                   const char *what) {
  if (x.size() != f.num_vars())
    throw DimensionError(std::string(what) + " has " +
                         std::to_string(x.size()) + " coordinates, matrix has " +
                         std::to_string(f.num_vars()) + " variables");
}

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw Error("region radius must be positive and finite");
}

void require_radii(std::span<const double> radii) {
  if (radii.empty())
    throw Error("radius schedule is empty");
  for (double r : radii)
    if (!(r > 0.0) || !std::isfinite(r))
      throw Error("radii must be positive and finite");
}

std::uint32_t max_degree(std::initializer_list<const PolyMatrix *> ms) {
  std::uint32_t d = 0;
  for (const auto *m : ms)
    d = std::max(d, m->degree());
  if (d == 0)
    throw PreconditionError(
        "all entries are constant (degree 0); the bound needs degree >= 1");
  return d;
}

std::uint32_t u32(std::size_t v) { return static_cast<std::uint32_t>(v); }

template <class Fn>
std::vector<SampleRecord> collect(std::size_t count, unsigned workers,
                                  Fn &&fn) {
  std::vector<SampleRecord> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

bool informative(const SampleRecord &r) { return !r.excluded && !r.auto_pass; }

// Counts, empirical constant, and the shared part of the verdict.
void fold(VerificationReport &rep) {
  rep.excluded_count = 0;
  rep.auto_pass_count = 0;
  std::size_t used = 0;
  double c = rep.constant_kind == ConstantKind::min ? kInf : 0.0;
  for (const auto &r : rep.records) {
    rep.excluded_count += r.excluded;
    rep.auto_pass_count += r.auto_pass && !r.excluded;
    if (!informative(r))
      continue;
    ++used;
    c = rep.constant_kind == ConstantKind::min ? std::min(c, r.ratio)
                                               : std::max(c, r.ratio);
  }
  rep.empirical_constant = c;
  if (rep.excluded_count)
    rep.notes.push_back(std::to_string(rep.excluded_count) +
                        " samples excluded (on the zero set or both sides vanish)");
  if (rep.auto_pass_count)
    rep.notes.push_back(std::to_string(rep.auto_pass_count) +
                        " samples auto-pass: bound underflows double precision");
  if (rep.constant_kind == ConstantKind::min) {
    if (used == 0 && rep.auto_pass_count == 0) {
      rep.verdict = Verdict::inconclusive;
      rep.notes.push_back("no informative samples");
    } else {
      rep.verdict = c > 0.0 ? Verdict::pass : Verdict::fail;
    }
  } else {
    if (used == 0) {
      rep.verdict = Verdict::inconclusive;
      rep.notes.push_back("no informative samples");
    } else {
      rep.verdict = std::isfinite(c) ? Verdict::pass : Verdict::fail;
    }
  }
}

void note_transposed(VerificationReport &rep,
                     std::initializer_list<const PolyMatrix *> ms) {
  for (const auto *m : ms)
    if (m->transposed())
      rep.notes.push_back("matrix " +
                          (m->name().empty() ? std::string("(unnamed)")
                                             : m->name()) +
                          " was given with p > q and is used transposed");
}

// A distance that falls back to the distance to a known zero when the local
// search misses; the fallback only overestimates dist, making ratios
// rhs/lhs smaller.
struct DistanceProbe {
  const ZeroSetProjector &proj;
  Vector known_zero;

  std::pair<double, bool> operator()(std::span<const double> x,
                                     const DistanceOptions &opts) const {
    try {
      const auto d = proj.distance(x, opts);
      return {std::min(d.value, distance(x, known_zero)), false};
    } catch (const NoZeroFound &) {
      return {distance(x, known_zero), true};
    }
  }
};

Vector origin(std::size_t n) { return Vector(n, 0.0); }

void note_fallbacks(VerificationReport &rep, std::size_t count) {
  if (count)
    rep.notes.push_back(std::to_string(count) +
                        " distance searches fell back to a known zero");
}

// ln of the base raised to the exponent, or -inf for a zero base.
long double log_bound(double base, const ExponentBound &e) {
  return log_power(base, e);
}

// Fills lhs, ratio and flags for inequalities c·lhs <= rhs whose lhs is a
// huge power evaluated through logarithms.
void set_global_sides(SampleRecord &rec, long double log_lhs, double rhs) {
  rec.rhs = rhs;
  const long double lhs = std::exp(log_lhs);
  rec.lhs = static_cast<double>(lhs);
  if (rec.lhs == 0.0) {
    rec.auto_pass = true;
    rec.ratio = kInf;
    return;
  }
  if (rhs <= 0.0) {
    rec.ratio = 0.0;
    return;
  }
  const long double r = std::exp(std::log(static_cast<long double>(rhs)) -
                                 log_lhs);
  rec.ratio = r > static_cast<long double>(std::numeric_limits<double>::max())
                  ? kInf
                  : static_cast<double>(r);
}

struct GradientSamples {
  std::vector<SampleRecord> records;
  double base_value = 0.0;
  std::size_t multiple = 0;
};

GradientSamples sample_gradient(const AuxiliarySetup &setup,
                                std::span<const double> base,
                                const SamplePlan &plan,
                                const ExponentBound &alpha) {
  const std::size_t per = static_cast<std::size_t>(plan.samples_per_radius);
  const double fb = setup.base_value();
  GradientSamples out;
  out.base_value = fb;
  out.records =
      collect(plan.radii.size() * per, plan.workers, [&](std::size_t i) {
        const double r = plan.radii[i / per];
        Rng rng = point_rng(plan, i);
        SampleRecord rec;
        rec.radius = r;
        rec.point = on_sphere(base, r, rng);
        const auto s = slope_f(setup, rec.point, plan.slope_options(i));
        rec.f = s.sigma;
        rec.slope = s.value;
        rec.multiplicity = s.multiplicity;
        rec.lhs = s.value;
        rec.rhs = power(std::fabs(rec.f - fb), alpha);
        const bool on_zero_set = rec.f <= plan.zero_tol && fb <= plan.zero_tol;
        if (on_zero_set ||
            (rec.lhs <= kGradientExclusion && rec.rhs <= kGradientExclusion)) {
          rec.excluded = true;
          rec.ratio = kNaN;
        } else {
          rec.ratio = rec.rhs > 0.0 ? rec.lhs / rec.rhs : kInf;
        }
        return rec;
      });
  for (const auto &rec : out.records)
    out.multiple += rec.multiplicity > 1;
  return out;
}

FitResult fit_records(const std::vector<SampleRecord> &records,
                      std::span<const double> radii, double base_value) {
  std::vector<double> xs, ys;
  for (double r : radii) {
    const SampleRecord *best = nullptr;
    for (const auto &rec : records) {
      if (rec.radius != r || rec.excluded || !rec.slope || *rec.slope <= 0.0)
        continue;
      if (std::fabs(rec.f - base_value) <= 0.0)
        continue;
      if (!best || *rec.slope < *best->slope)
        best = &rec;
    }
    if (best) {
      xs.push_back(std::log(std::fabs(best->f - base_value)));
      ys.push_back(std::log(*best->slope));
    }
  }
  if (xs.size() < 2)
    throw PreconditionError("exponent fit needs at least 2 radii with "
                            "informative samples, found " +
                            std::to_string(xs.size()));
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / k;
    my += ys[i] / k;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 1e-300)
    throw NumericalError("degenerate fit: all |f - f(base)| values coincide");
  FitResult fit;
  fit.alpha = sxy / sxx;
  fit.points = xs.size();
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + fit.alpha * (xs[i] - mx));
    sse += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

// Inconclusive when the per-radius minima over the three smallest radii
// shrink monotonically faster than kMaxDecayPerDecade.
bool unstable(const VerificationReport &rep, std::span<const double> radii,
              std::string &why) {
  std::vector<std::pair<double, double>> minima; // (radius, min ratio)
  for (double r : radii) {
    double m = kInf;
    bool any = false;
    for (const auto &rec : rep.records)
      if (rec.radius == r && informative(rec)) {
        m = std::min(m, rec.ratio);
        any = true;
      }
    if (any)
      minima.emplace_back(r, m);
  }
  if (minima.size() > 3)
    minima.erase(minima.begin(), minima.end() - 3);
  if (minima.size() < 2)
    return false;
  for (std::size_t i = 1; i < minima.size(); ++i)
    if (!(minima[i].second < minima[i - 1].second))
      return false;
  const double decades =
      std::log10(minima.front().first / minima.back().first);
  if (!(decades > 0.0) || !(minima.back().second > 0.0))
    return false;
  const double per_decade =
      std::pow(minima.front().second / minima.back().second, 1.0 / decades);
  if (per_decade <= kMaxDecayPerDecade)
    return false;
  why = "per-radius minimum ratio decays by a factor " +
        format_double(per_decade) +
        " per decade over the smallest radii; exponent may be too small";
  return true;
}

// Projections of sample points onto {h = 0} inside the ball.
// The second half of the starts lies on the boundary sphere; they only serve
// to detect zeros of h reaching the boundary.
std::vector<Vector> sample_zero_set(const ZeroSetProjector &proj,
                                    std::span<const double> center,
                                    double radius, const SamplePlan &plan) {
  const std::size_t count = static_cast<std::size_t>(plan.samples_per_radius);
  std::vector<std::optional<Vector>> found(2 * count);
  parallel_for(2 * count, plan.workers, [&](std::size_t i) {
    Rng rng = point_rng(plan, i);
    const Vector start = i < count ? in_ball(center, radius, rng)
                                   : on_sphere(center, radius, rng);
    found[i] = proj.project(start, plan.distance_options(i));
  });
  std::vector<Vector> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    auto &p = found[i];
    if (!p)
      continue;
    if (distance(*p, center) >= 0.99 * radius)
      throw PreconditionError(
          "zeros of h reach the boundary of the sampling ball at " +
          format_point(*p) + "; K = {h = 0} may be unbounded");
    if (i < count)
      out.push_back(std::move(*p));
  }
  return out;
}

double snap(double v) {
  const double r = std::round(v * 1e9) / 1e9;
  return r == 0.0 ? 0.0 : r;
}

} // namespace

void SamplePlan::validate() const {
  if (samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  if (sphere_samples < 1)
    throw Error("sphere samples must be at least 1");
  require_radii(radii);
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1]))
      throw Error("radii must be strictly decreasing");
}

SlopeOptions SamplePlan::slope_options(std::uint64_t index) const {
  SlopeOptions o;
  o.zero_tol = zero_tol;
  o.eigenspace_tol = eigenspace_tol;
  o.sphere_samples = sphere_samples;
  o.seed = derive_seed(derive_seed(seed, kSlopeStream), index);
  return o;
}

DistanceOptions SamplePlan::distance_options(std::uint64_t index) const {
  DistanceOptions o;
  o.zero_tol = dist_tol;
  o.restarts = restarts;
  o.eigenspace_tol = eigenspace_tol;
  o.seed = derive_seed(derive_seed(seed, kDistStream), index);
  return o;
}

std::vector<double> default_global_radii() { return {1.0, 10.0, 100.0, 1000.0}; }

std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  case Verdict::inconclusive:
    return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(std::string_view s) {
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::inconclusive})
    if (to_string(v) == s)
      return v;
  throw Error("unknown verdict '" + std::string(s) + "'");
}

VerificationReport verify_gradient_inequality(const PolyMatrix &f,
                                              std::span<const double> base,
                                              const SamplePlan &plan,
                                              bool use_at_zero_exponent) {
  plan.validate();
  require_point(f, base, "base point");
  f.require_positive_degree();
  const auto n = u32(f.num_vars()), p = u32(f.rows());
  const auto setup = AuxiliarySetup::at_base_point(f, base);
  if (use_at_zero_exponent && setup.base_value() > plan.zero_tol)
    throw PreconditionError("the at-zero exponent needs f(base) = 0, got f = " +
                            format_double(setup.base_value()));

  VerificationReport rep;
  rep.exponent_used = use_at_zero_exponent
                          ? gradient_exponent_at_zero(n, p, f.degree())
                          : gradient_exponent(n, p, f.degree());
  rep.inequality_id =
      use_at_zero_exponent ? "gradient_at_zero" : "gradient";
  rep.constant_kind = ConstantKind::min;
  auto samples = sample_gradient(setup, base, plan, rep.exponent_used);
  rep.records = std::move(samples.records);
  note_transposed(rep, {&f});
  if (samples.multiple)
    rep.notes.push_back("multiplicity>1 at " + std::to_string(samples.multiple) +
                        " points: slope approximate");
  fold(rep);
  try {
    const auto fit = fit_records(rep.records, plan.radii, samples.base_value);
    rep.fitted_exponent = fit.alpha;
    rep.fit_r_squared = fit.r_squared;
  } catch (const Error &) {
    rep.notes.push_back("exponent fit unavailable");
  }
  std::string why;
  if (rep.verdict == Verdict::pass && unstable(rep, plan.radii, why)) {
    rep.verdict = Verdict::inconclusive;
    rep.notes.push_back(why);
  }
  return rep;
}

FitResult fit_empirical_exponent(const PolyMatrix &f,
                                 std::span<const double> base,
                                 const SamplePlan &plan) {
  plan.validate();
  require_point(f, base, "base point");
  const auto setup = AuxiliarySetup::at_base_point(f, base);
  // The exponent only enters the exclusion test; any valid one will do.
  const auto alpha = ExponentBound::make(1, 1, BoundKind::gradient);
  const auto samples = sample_gradient(setup, base, plan, alpha);
  return fit_records(samples.records, plan.radii, samples.base_value);
}

VerificationReport verify_error_bound(const PolyMatrix &f,
                                      std::span<const double> center,
                                      double radius, const SamplePlan &plan) {
  require_point(f, center, "region center");
  require_radius(radius);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  const std::uint32_t d = max_degree({&f});
  const ZeroSetProjector proj({f});
  const auto anchor =
      proj.distance(center, plan.distance_options(kPreconditionIndex));
  const DistanceProbe probe{proj, anchor.witness};

  VerificationReport rep;
  rep.inequality_id = "error_bound";
  rep.exponent_used = error_bound_exponent(u32(f.num_vars()), u32(f.rows()), d);
  rep.constant_kind = ConstantKind::min;
  std::vector<char> fell_back(static_cast<std::size_t>(plan.samples_per_radius));
  rep.records = collect(fell_back.size(), plan.workers, [&](std::size_t i) {
    Rng rng = point_rng(plan, i);
    SampleRecord rec;
    rec.point = in_ball(center, radius, rng);
    rec.radius = distance(rec.point, center);
    rec.f = smallest_singular_value(f, rec.point);
    const auto [dist, fb] = probe(rec.point, plan.distance_options(i));
    fell_back[i] = fb;
    rec.lhs = dist;
    rec.rhs = power(rec.f, rep.exponent_used);
    if (rec.lhs <= kDistanceExclusion) {
      rec.excluded = true;
      rec.ratio = kNaN;
    } else {
      rec.ratio = rec.rhs / rec.lhs;
    }
    return rec;
  });
  note_transposed(rep, {&f});
  note_fallbacks(rep, std::count(fell_back.begin(), fell_back.end(), 1));
  fold(rep);
  return rep;
}

VerificationReport verify_separation(const PolyMatrix &f, const PolyMatrix &g,
                                     std::span<const double> center,
                                     double radius, const SamplePlan &plan) {
  require_same_vars({&f, &g});
  require_point(f, center, "region center");
  require_radius(radius);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  const std::uint32_t d = max_degree({&f, &g});
  const ZeroSetProjector pf({f}), pg({g}), pfg({f, g});
  DistanceEstimate anchor;
  try {
    anchor = pfg.distance(center, plan.distance_options(kPreconditionIndex));
  } catch (const NoZeroFound &) {
    throw NoZeroFound("S_F and S_G have no common point reachable from " +
                      format_point(center) + "; intersection not found");
  }
  const auto zf = pf.distance(center, plan.distance_options(kPreconditionIndex));
  const auto zg = pg.distance(center, plan.distance_options(kPreconditionIndex));
  const DistanceProbe df{pf, zf.witness}, dg{pg, zg.witness},
      dfg{pfg, anchor.witness};

  VerificationReport rep;
  rep.inequality_id = "separation";
  rep.exponent_used = separation_exponent(u32(f.num_vars()), u32(f.rows()),
                                          u32(g.rows()), d);
  rep.constant_kind = ConstantKind::min;
  std::vector<char> fell_back(static_cast<std::size_t>(plan.samples_per_radius));
  rep.records = collect(fell_back.size(), plan.workers, [&](std::size_t i) {
    Rng rng = point_rng(plan, i);
    SampleRecord rec;
    rec.point = in_ball(center, radius, rng);
    rec.radius = distance(rec.point, center);
    rec.f = smallest_singular_value(f, rec.point);
    const auto opts = plan.distance_options(i);
    const auto [a, fa] = df(rec.point, opts);
    const auto [b, fb] = dg(rec.point, opts);
    const auto [c, fc] = dfg(rec.point, opts);
    fell_back[i] = fa || fb || fc;
    rec.lhs = c;
    rec.rhs = power(a + b, rep.exponent_used);
    if (rec.lhs <= kDistanceExclusion) {
      rec.excluded = true;
      rec.ratio = kNaN;
    } else {
      rec.ratio = rec.rhs / rec.lhs;
    }
    return rec;
  });
  note_transposed(rep, {&f, &g});
  note_fallbacks(rep, std::count(fell_back.begin(), fell_back.end(), 1));
  fold(rep);
  return rep;
}

VerificationReport verify_factorization(const PolyMatrix &f,
                                        const PolyMatrix &g,
                                        const PolyMatrix &h,
                                        std::span<const double> center,
                                        double radius, const SamplePlan &plan) {
  require_same_vars({&f, &g, &h});
  require_point(f, center, "region center");
  require_radius(radius);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  const std::uint32_t d = max_degree({&f, &h});
  const ZeroSetProjector ph({h}), pfh({f, h});

  const auto k_points = sample_zero_set(ph, center, radius, plan);
  if (k_points.empty())
    throw PreconditionError("could not sample K = {h = 0} inside the ball "
                            "around " + format_point(center));

  // Inclusion spot-check: zeros of f on K must be zeros of g.
  std::vector<std::optional<Vector>> zeros(k_points.size());
  parallel_for(k_points.size(), plan.workers, [&](std::size_t i) {
    zeros[i] = pfh.project(k_points[i], plan.distance_options(i));
  });
  std::vector<Vector> witnesses;
  std::size_t checked = 0;
  for (const auto &z : zeros) {
    if (!z)
      continue;
    ++checked;
    if (smallest_singular_value(g, *z) <= kInclusionTol)
      continue;
    Vector w(z->size());
    std::transform(z->begin(), z->end(), w.begin(), snap);
    const bool seen = std::any_of(
        witnesses.begin(), witnesses.end(),
        [&](const Vector &v) { return distance(v, w) <= 1e-6; });
    if (!seen)
      witnesses.push_back(std::move(w));
  }
  if (!witnesses.empty()) {
    std::sort(witnesses.begin(), witnesses.end(),
              [](const Vector &a, const Vector &b) { return a > b; });
    throw InclusionViolated(std::move(witnesses));
  }

  VerificationReport rep;
  rep.inequality_id = "factorization";
  rep.exponent_used = factorization_exponent(u32(f.num_vars()), u32(f.rows()),
                                             u32(h.rows()), d);
  rep.constant_kind = ConstantKind::max;
  rep.records = collect(k_points.size(), plan.workers, [&](std::size_t i) {
    SampleRecord rec;
    rec.point = k_points[i];
    rec.radius = distance(rec.point, center);
    rec.f = smallest_singular_value(f, rec.point);
    rec.lhs = smallest_singular_value(g, rec.point);
    rec.rhs = power(rec.f, rep.exponent_used);
    if (rec.f <= kDistanceExclusion) {
      rec.excluded = true;
      rec.ratio = kNaN;
    } else {
      rec.ratio = rec.lhs / rec.rhs;
    }
    return rec;
  });
  note_transposed(rep, {&f, &g, &h});
  rep.notes.push_back(std::to_string(k_points.size()) + " points sampled on K");
  rep.notes.push_back("inclusion checked at " + std::to_string(checked) +
                      " zeros of f on K");
  rep.notes.push_back("compactness of K is assumed, not proved");
  fold(rep);
  return rep;
}

namespace {

struct GlobalSampler {
  const SamplePlan &plan;
  std::span<const double> radii;
  std::size_t n;

  std::size_t count() const {
    return radii.size() * static_cast<std::size_t>(plan.samples_per_radius);
  }
  SampleRecord start(std::size_t i) const {
    const std::size_t per = static_cast<std::size_t>(plan.samples_per_radius);
    Rng rng = point_rng(plan, i);
    SampleRecord rec;
    rec.radius = radii[i / per];
    rec.point = on_sphere(origin(n), rec.radius, rng);
    return rec;
  }
};

} // namespace

VerificationReport verify_global(const PolyMatrix &f,
                                 std::span<const double> radii,
                                 const SamplePlan &plan) {
  require_radii(radii);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  const std::uint32_t d = max_degree({&f});
  const std::size_t n = f.num_vars();
  const ZeroSetProjector proj({f});
  const auto anchor =
      proj.distance(origin(n), plan.distance_options(kPreconditionIndex));
  const DistanceProbe probe{proj, anchor.witness};

  VerificationReport rep;
  rep.inequality_id = "global";
  rep.exponent_used = global_loja_exponent(u32(n), u32(f.rows()), d);
  rep.constant_kind = ConstantKind::min;
  const GlobalSampler sampler{plan, radii, n};
  std::vector<char> fell_back(sampler.count());
  rep.records = collect(sampler.count(), plan.workers, [&](std::size_t i) {
    SampleRecord rec = sampler.start(i);
    rec.f = smallest_singular_value(f, rec.point);
    const auto [dist, fb] = probe(rec.point, plan.distance_options(i));
    fell_back[i] = fb;
    if (dist <= kDistanceExclusion) {
      rec.excluded = true;
      rec.lhs = 0.0;
      rec.rhs = rec.f;
      rec.ratio = kNaN;
      return rec;
    }
    const double xn = norm(rec.point);
    const double base = dist / (1.0 + xn * xn);
    set_global_sides(rec, log_bound(base, rep.exponent_used), rec.f);
    return rec;
  });
  note_transposed(rep, {&f});
  note_fallbacks(rep, std::count(fell_back.begin(), fell_back.end(), 1));
  fold(rep);
  return rep;
}

VerificationReport verify_compact_tail(const PolyMatrix &f,
                                       std::span<const double> radii,
                                       double r_big, const SamplePlan &plan) {
  require_radii(radii);
  require_radius(r_big);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  std::vector<double> tail;
  for (double r : radii)
    if (r >= r_big)
      tail.push_back(r);
  if (tail.empty())
    throw PreconditionError("no radius in the schedule reaches " +
                            format_double(r_big));
  const std::uint32_t d = max_degree({&f});
  const std::size_t n = f.num_vars();
  // S_F must be nonempty; its compactness is assumed.
  ZeroSetProjector({f}).distance(origin(n),
                                 plan.distance_options(kPreconditionIndex));

  VerificationReport rep;
  rep.inequality_id = "compact_tail";
  rep.exponent_used = global_loja_exponent(u32(n), u32(f.rows()), d);
  rep.constant_kind = ConstantKind::min;
  const GlobalSampler sampler{plan, tail, n};
  rep.records = collect(sampler.count(), plan.workers, [&](std::size_t i) {
    SampleRecord rec = sampler.start(i);
    rec.f = smallest_singular_value(f, rec.point);
    // ‖x‖^(-E) = exp(-E ln ‖x‖)
    set_global_sides(rec, -log_bound(norm(rec.point), rep.exponent_used),
                     rec.f);
    return rec;
  });
  note_transposed(rep, {&f});
  rep.notes.push_back("compactness of S_F is assumed, not proved");
  fold(rep);
  return rep;
}

VerificationReport verify_global_separation(const PolyMatrix &f,
                                            const PolyMatrix &g,
                                            std::span<const double> radii,
                                            const SamplePlan &plan) {
  require_same_vars({&f, &g});
  require_radii(radii);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  const std::uint32_t d = max_degree({&f, &g});
  const std::size_t n = f.num_vars();
  const ZeroSetProjector pf({f}), pg({g}), pfg({f, g});
  DistanceEstimate anchor;
  try {
    anchor = pfg.distance(origin(n), plan.distance_options(kPreconditionIndex));
  } catch (const NoZeroFound &) {
    throw NoZeroFound("S_F and S_G have no common point reachable from the "
                      "origin; intersection not found");
  }
  const DistanceProbe df{pf, anchor.witness}, dg{pg, anchor.witness},
      dfg{pfg, anchor.witness};

  VerificationReport rep;
  rep.inequality_id = "global_separation";
  rep.exponent_used = global_separation_exponent(u32(n), u32(f.rows()),
                                                 u32(g.rows()), d);
  rep.constant_kind = ConstantKind::min;
  const GlobalSampler sampler{plan, radii, n};
  std::vector<char> fell_back(sampler.count());
  rep.records = collect(sampler.count(), plan.workers, [&](std::size_t i) {
    SampleRecord rec = sampler.start(i);
    rec.f = smallest_singular_value(f, rec.point);
    const auto opts = plan.distance_options(i);
    const auto [a, fa] = df(rec.point, opts);
    const auto [b, fb] = dg(rec.point, opts);
    const auto [c, fc] = dfg(rec.point, opts);
    fell_back[i] = fa || fb || fc;
    if (c <= kDistanceExclusion) {
      rec.excluded = true;
      rec.rhs = a + b;
      rec.ratio = kNaN;
      return rec;
    }
    const double xn = norm(rec.point);
    set_global_sides(rec, log_bound(c / (1.0 + xn * xn), rep.exponent_used),
                     a + b);
    return rec;
  });
  note_transposed(rep, {&f, &g});
  note_fallbacks(rep, std::count(fell_back.begin(), fell_back.end(), 1));
  fold(rep);
  return rep;
}

GoodnessResult check_good_at_infinity(const PolyMatrix &f,
                                      std::span<const double> radii,
                                      const SamplePlan &plan) {
  require_radii(radii);
  if (plan.samples_per_radius < 1)
    throw Error("samples per radius must be at least 1");
  const std::size_t n = f.num_vars();
  const std::size_t per = static_cast<std::size_t>(plan.samples_per_radius);
  const std::size_t probes = std::min<std::size_t>(per, 8);
  const AuxiliarySetup setup(f, 0.0);
  const ZeroSetProjector proj({f});
  const GlobalSampler sampler{plan, radii, n};

  std::vector<double> slopes(sampler.count());
  std::vector<char> far_zero(sampler.count(), 0);
  parallel_for(sampler.count(), plan.workers, [&](std::size_t i) {
    const SampleRecord rec = sampler.start(i);
    slopes[i] = slope_f(setup, rec.point, plan.slope_options(i)).value;
    // Zeros of f far out carry slope 0; look for them from a few samples.
    if (i % per < probes) {
      DistanceOptions opts = plan.distance_options(i);
      if (auto z = proj.project(rec.point, opts))
        far_zero[i] = norm(*z) >= 0.5 * rec.radius;
    }
  });

  GoodnessResult res;
  res.radii.assign(radii.begin(), radii.end());
  std::size_t far = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double m = kInf;
    for (std::size_t s = 0; s < per; ++s) {
      const std::size_t i = k * per + s;
      m = std::min(m, far_zero[i] ? 0.0 : slopes[i]);
      far += far_zero[i];
    }
    res.sphere_minima.push_back(m);
  }
  if (far)
    res.notes.push_back(std::to_string(far) +
                        " probes reached zeros of f at norm >= R/2 (slope 0)");

  const std::size_t k = res.sphere_minima.size();
  std::vector<double> tail(res.sphere_minima.end() - std::min<std::size_t>(k, 3),
                           res.sphere_minima.end());
  std::sort(tail.begin(), tail.end());
  const double median = tail[tail.size() / 2];
  res.good = median > 0.0 && res.sphere_minima.back() >= 0.5 * median;
  if (res.good) {
    for (std::size_t j = 0; j < k; ++j) {
      const double suffix =
          *std::min_element(res.sphere_minima.begin() + j, res.sphere_minima.end());
      if (suffix >= 0.5 * median) {
        res.r_hat = radii[j];
        res.c_hat = suffix;
        break;
      }
    }
  } else {
    res.c_hat = 0.0;
    res.r_hat = *std::max_element(radii.begin(), radii.end());
  }
  res.notes.push_back("sampled verdict, not certified");
  return res;
}

VerificationReport verify_holder_global(const PolyMatrix &f,
                                        std::span<const double> radii,
                                        const SamplePlan &plan) {
  const std::uint32_t d = max_degree({&f});
  const auto good = check_good_at_infinity(f, radii, plan);
  if (!good.good)
    throw PreconditionError(
        "F is not empirically good at infinity (sphere minima of the slope "
        "are not bounded away from 0)");
  const std::size_t n = f.num_vars();
  const ZeroSetProjector proj({f});
  const auto anchor =
      proj.distance(origin(n), plan.distance_options(kPreconditionIndex));
  const DistanceProbe probe{proj, anchor.witness};
  const double split = 3.0 * good.r_hat + 2.0 * norm(anchor.witness);

  VerificationReport rep;
  rep.inequality_id = "holder";
  rep.exponent_used = error_bound_exponent(u32(n), u32(f.rows()), d);
  rep.constant_kind = ConstantKind::min;
  const std::size_t per = static_cast<std::size_t>(plan.samples_per_radius);
  const double outside[] = {2.0 * split, 10.0 * split, 100.0 * split};
  std::vector<char> fell_back(4 * per);
  std::vector<double> zero_norms(4 * per, 0.0);
  rep.records = collect(4 * per, plan.workers, [&](std::size_t i) {
    Rng rng = point_rng(plan, i);
    SampleRecord rec;
    rec.point = i < per ? in_ball(origin(n), split, rng)
                        : on_sphere(origin(n), outside[i / per - 1], rng);
    rec.radius = norm(rec.point);
    rec.f = smallest_singular_value(f, rec.point);
    const auto opts = plan.distance_options(i);
    double dist;
    try {
      const auto est = proj.distance(rec.point, opts);
      dist = std::min(est.value, distance(rec.point, anchor.witness));
      zero_norms[i] = norm(est.witness);
    } catch (const NoZeroFound &) {
      dist = distance(rec.point, anchor.witness);
      fell_back[i] = 1;
    }
    rec.lhs = dist;
    rec.rhs = power(rec.f, rep.exponent_used) + rec.f;
    if (rec.lhs <= kDistanceExclusion) {
      rec.excluded = true;
      rec.ratio = kNaN;
    } else {
      rec.ratio = rec.rhs / rec.lhs;
    }
    return rec;
  });
  note_transposed(rep, {&f});
  note_fallbacks(rep, std::count(fell_back.begin(), fell_back.end(), 1));
  rep.notes.push_back("goodness at infinity: c_hat = " +
                      format_double(good.c_hat) + ", R_hat = " +
                      format_double(good.r_hat) + " (sampled, not certified)");
  rep.notes.push_back("split radius 3 R_hat + 2|s| = " + format_double(split));
  fold(rep);
  const double far = std::max(norm(anchor.witness),
                              *std::max_element(zero_norms.begin(),
                                                zero_norms.end()));
  if (far > good.r_hat) {
    rep.notes.push_back("found a zero of f at norm " + format_double(far) +
                        " outside the ball of radius R_hat");
    if (rep.verdict == Verdict::pass)
      rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

} // namespace svloja
