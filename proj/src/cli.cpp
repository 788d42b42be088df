#include "svloja/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "svloja/distance.hpp"
#include "svloja/errors.hpp"
#include "svloja/exponents.hpp"
#include "svloja/format.hpp"
#include "svloja/numlin.hpp"
#include "svloja/report.hpp"
#include "svloja/sampling.hpp"
#include "svloja/subdiff.hpp"
#include "svloja/verify.hpp"

namespace svloja::cli {

namespace {

using nlohmann::json;

class UsageError : public Error {
public:
  using Error::Error;
};

struct Config {
  std::vector<std::string> matrices;
  std::string x, base, center, radii;
  double radius = 1.0;
  double r_big = 1.0;
  bool at_zero = false;
  double h = 1e-6;

  std::uint64_t seed = 0;
  int samples = 200;
  int sphere_samples = 512;
  int restarts = 16;
  unsigned workers = 0; // 0: environment or hardware default
  double zero_tol = 1e-10;
  double eig_tol = kDefaultEigenspaceTol;
  double dist_tol = 1e-8;

  std::string format = "json";
  std::string out;

  std::uint32_t n = 0, p = 0, p2 = 0, d = 0;
};

Vector parse_list(const std::string &text, const char *what) {
  Vector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char *end = nullptr;
    const double value = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() ||
        !std::isfinite(value))
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    v.push_back(value);
  }
  if (v.empty())
    throw UsageError(std::string("empty list for ") + what);
  return v;
}

// A missing point defaults to the origin.
Vector point_or_origin(const std::string &text, std::size_t n,
                       const char *what) {
  if (text.empty())
    return Vector(n, 0.0);
  auto v = parse_list(text, what);
  if (v.size() != n)
    throw UsageError(std::string(what) + " has " + std::to_string(v.size()) +
                     " coordinates, matrix has " + std::to_string(n) +
                     " variables");
  return v;
}

std::vector<PolyMatrix> load(const Config &cfg, std::size_t count) {
  if (cfg.matrices.size() != count)
    throw UsageError("this command takes " + std::to_string(count) +
                     " matrix file(s) via -m, got " +
                     std::to_string(cfg.matrices.size()));
  std::vector<PolyMatrix> ms;
  for (const auto &path : cfg.matrices)
    ms.push_back(load_matrix_file(path));
  for (const auto &m : ms)
    if (m.num_vars() != ms.front().num_vars())
      throw UsageError("matrix files disagree on the number of variables");
  return ms;
}

SamplePlan plan_of(const Config &cfg) {
  SamplePlan plan;
  plan.samples_per_radius = cfg.samples;
  plan.seed = cfg.seed;
  plan.sphere_samples = cfg.sphere_samples;
  plan.workers = cfg.workers ? cfg.workers : default_workers();
  plan.zero_tol = cfg.zero_tol;
  plan.eigenspace_tol = cfg.eig_tol;
  plan.dist_tol = cfg.dist_tol;
  plan.restarts = cfg.restarts;
  if (!cfg.radii.empty())
    plan.radii = parse_list(cfg.radii, "--radii");
  return plan;
}

std::vector<double> global_radii(const Config &cfg) {
  return cfg.radii.empty() ? default_global_radii()
                           : parse_list(cfg.radii, "--radii");
}

void emit(const Config &cfg, const std::string &text, std::ostream &out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file || !(file << text))
    throw Error("cannot write '" + cfg.out + "'");
}

void require_json_or_text(const Config &cfg) {
  if (cfg.format == "csv")
    throw UsageError("csv output is only available for verification reports");
}

void emit_json_or_text(const Config &cfg, const json &j,
                       const std::string &text, std::ostream &out) {
  require_json_or_text(cfg);
  emit(cfg, cfg.format == "json" ? dump_json(j) : text, out);
}

int exit_for(Verdict v) {
  switch (v) {
  case Verdict::pass:
    return exit_pass;
  case Verdict::fail:
    return exit_fail;
  case Verdict::inconclusive:
    return exit_inconclusive;
  }
  return exit_inconclusive;
}

int emit_report(const Config &cfg, const VerificationReport &r,
                std::ostream &out) {
  if (cfg.format == "json")
    emit(cfg, dump_json(report_to_json(r)), out);
  else if (cfg.format == "csv")
    emit(cfg, report_to_csv(r), out);
  else
    emit(cfg, report_to_text(r), out);
  return exit_for(r.verdict);
}

int cmd_exponents(const Config &cfg, std::ostream &out) {
  std::uint32_t n = cfg.n, p = cfg.p, p2 = cfg.p2, d = cfg.d;
  if (!cfg.matrices.empty()) {
    if (cfg.matrices.size() > 2)
      throw UsageError("exponents takes at most two matrix files");
    const auto ms = load(cfg, cfg.matrices.size());
    n = static_cast<std::uint32_t>(ms[0].num_vars());
    p = static_cast<std::uint32_t>(ms[0].rows());
    p2 = ms.size() > 1 ? static_cast<std::uint32_t>(ms[1].rows()) : 0;
    d = 0;
    for (const auto &m : ms)
      d = std::max(d, m.degree());
  } else if (!n || !p || !d) {
    throw UsageError("exponents needs --n, --p and --d, or -m");
  }
  std::vector<ExponentBound> bounds = {
      gradient_exponent(n, p, d), gradient_exponent_at_zero(n, p, d),
      error_bound_exponent(n, p, d), global_loja_exponent(n, p, d)};
  if (p2) {
    bounds.push_back(separation_exponent(n, p, p2, d));
    bounds.push_back(factorization_exponent(n, p, p2, d));
    bounds.push_back(global_separation_exponent(n, p, p2, d));
  }
  json j = {{"n", n}, {"p", p}, {"d", d}};
  if (p2)
    j["p2"] = p2;
  j["bounds"] = json::object();
  std::ostringstream text;
  text << "n = " << n << ", p = " << p;
  if (p2)
    text << ", p2 = " << p2;
  text << ", d = " << d << '\n';
  std::size_t width = 0;
  for (const auto &b : bounds)
    width = std::max(width, b.fraction().size());
  for (const auto &b : bounds) {
    j["bounds"][std::string(to_string(b.kind))] = exponent_to_json(b);
    std::string name(to_string(b.kind)), frac = b.fraction();
    name.resize(18, ' ');
    frac.resize(width, ' ');
    text << name << ' ' << frac << "  " << format_double(b.as_float) << '\n';
  }
  emit_json_or_text(cfg, j, text.str(), out);
  return exit_pass;
}

int cmd_eval(const Config &cfg, std::ostream &out) {
  const auto f = load(cfg, 1).front();
  const auto x = point_or_origin(cfg.x, f.num_vars(), "--x");
  const Matrix m = f.evaluate(x);
  const double sigma = smallest_singular_value(f, x);
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(m(i, k));
    rows.push_back(row);
  }
  const json j = {{"point", x}, {"matrix", rows}, {"f", sigma}};
  emit_json_or_text(cfg, j,
                    "f" + format_point(x) + " = " + format_double(sigma) + "\n",
                    out);
  return exit_pass;
}

SlopeOptions slope_options(const Config &cfg) {
  SlopeOptions o;
  o.zero_tol = cfg.zero_tol;
  o.eigenspace_tol = cfg.eig_tol;
  o.sphere_samples = cfg.sphere_samples;
  o.seed = cfg.seed;
  return o;
}

AuxiliarySetup setup_of(const Config &cfg, const PolyMatrix &f) {
  if (cfg.base.empty())
    return AuxiliarySetup(f, 0.0);
  return AuxiliarySetup::at_base_point(
      f, point_or_origin(cfg.base, f.num_vars(), "--base"));
}

int cmd_slope(const Config &cfg, std::ostream &out) {
  const auto f = load(cfg, 1).front();
  const auto x = point_or_origin(cfg.x, f.num_vars(), "--x");
  const auto setup = setup_of(cfg, f);
  const auto opts = slope_options(cfg);
  const auto s = slope_f(setup, x, opts);
  const auto st = slope_f_tilde(setup, x, opts);
  const auto grad = smooth_gradient(setup, x, opts);
  json j = {{"point", x},
            {"f", s.sigma},
            {"base_value", setup.base_value()},
            {"slope_f", s.value},
            {"slope_f_tilde", st.value},
            {"multiplicity", st.multiplicity},
            {"exact", st.exact},
            {"witness_y", st.witness_y},
            {"gradient", grad ? json(*grad) : json(nullptr)}};
  std::ostringstream text;
  text << "f = " << format_double(s.sigma) << "\nslope of f = "
       << format_double(s.value) << (st.exact ? "" : " (sampled)")
       << "\nslope of f~ = " << format_double(st.value)
       << "\nmultiplicity = " << st.multiplicity << '\n';
  emit_json_or_text(cfg, j, text.str(), out);
  return exit_pass;
}

int cmd_grad_check(const Config &cfg, std::ostream &out) {
  const auto f = load(cfg, 1).front();
  const auto x = point_or_origin(cfg.x, f.num_vars(), "--x");
  const AuxiliarySetup setup(f, 0.0);
  const auto grad = smooth_gradient(setup, x, slope_options(cfg));
  if (!grad) {
    emit_json_or_text(cfg, {{"point", x}, {"differentiable", false}},
                      "f is not known to be differentiable here\n", out);
    return exit_inconclusive;
  }
  Vector fd(x.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto xp = x, xm = x;
    xp[k] += cfg.h;
    xm[k] -= cfg.h;
    fd[k] = (smallest_singular_value(f, xp) - smallest_singular_value(f, xm)) /
            (2 * cfg.h);
    worst = std::max(worst, std::fabs(fd[k] - (*grad)[k]) /
                                std::max(1.0, std::fabs((*grad)[k])));
  }
  const bool ok = worst <= 1e-4;
  const json j = {{"point", x},         {"differentiable", true},
                  {"gradient", *grad},  {"finite_difference", fd},
                  {"max_rel_error", worst}, {"ok", ok}};
  emit_json_or_text(cfg, j,
                    "gradient " + format_point(*grad) + "\nfinite difference " +
                        format_point(fd) + "\nmax relative error " +
                        format_double(worst) + (ok ? " ok\n" : " too large\n"),
                    out);
  return ok ? exit_pass : exit_fail;
}

int cmd_fit(const Config &cfg, std::ostream &out) {
  const auto f = load(cfg, 1).front();
  const auto base = point_or_origin(cfg.base, f.num_vars(), "--base");
  const auto fit = fit_empirical_exponent(f, base, plan_of(cfg));
  const json j = {{"alpha", fit.alpha},
                  {"r_squared", fit.r_squared},
                  {"points", fit.points}};
  emit_json_or_text(cfg, j,
                    "alpha = " + format_double(fit.alpha) + " (R^2 " +
                        format_double(fit.r_squared) + ", " +
                        std::to_string(fit.points) + " radii)\n",
                    out);
  return exit_pass;
}

int cmd_dist(const Config &cfg, std::ostream &out) {
  if (cfg.matrices.size() != 1 && cfg.matrices.size() != 2)
    throw UsageError("dist takes one matrix file, or two for an intersection");
  const auto ms = load(cfg, cfg.matrices.size());
  const auto x = point_or_origin(cfg.x, ms[0].num_vars(), "--x");
  DistanceOptions opts;
  opts.zero_tol = cfg.dist_tol;
  opts.restarts = cfg.restarts;
  opts.eigenspace_tol = cfg.eig_tol;
  opts.seed = cfg.seed;
  const auto d = ms.size() == 1
                     ? estimate_distance_to_zero_set(ms[0], x, opts)
                     : estimate_distance_to_intersection(ms[0], ms[1], x, opts);
  const json j = {{"point", x},
                  {"value", d.value},
                  {"witness", d.witness},
                  {"restarts_used", d.restarts_used}};
  emit_json_or_text(cfg, j,
                    "dist = " + format_double(d.value) + ", witness " +
                        format_point(d.witness) + "\n",
                    out);
  return exit_pass;
}

using Action = std::function<int(const Config &, std::ostream &)>;

struct Verifier {
  const char *name;
  const char *help;
  Action action;
};

std::vector<Verifier> verifiers() {
  return {
      {"gradient", "slope inequality on spheres around --base",
       [](const Config &cfg, std::ostream &out) {
         const auto f = load(cfg, 1).front();
         const auto base = point_or_origin(cfg.base, f.num_vars(), "--base");
         return emit_report(
             cfg, verify_gradient_inequality(f, base, plan_of(cfg), cfg.at_zero),
             out);
       }},
      {"error-bound", "distance bound on the ball B(--center, --radius)",
       [](const Config &cfg, std::ostream &out) {
         const auto f = load(cfg, 1).front();
         const auto c = point_or_origin(cfg.center, f.num_vars(), "--center");
         return emit_report(cfg, verify_error_bound(f, c, cfg.radius, plan_of(cfg)),
                            out);
       }},
      {"separation", "separation of two zero sets on a ball",
       [](const Config &cfg, std::ostream &out) {
         const auto ms = load(cfg, 2);
         const auto c = point_or_origin(cfg.center, ms[0].num_vars(), "--center");
         return emit_report(
             cfg, verify_separation(ms[0], ms[1], c, cfg.radius, plan_of(cfg)),
             out);
       }},
      {"global-separation", "separation of two zero sets on growing spheres",
       [](const Config &cfg, std::ostream &out) {
         const auto ms = load(cfg, 2);
         return emit_report(cfg,
                            verify_global_separation(ms[0], ms[1],
                                                     global_radii(cfg),
                                                     plan_of(cfg)),
                            out);
       }},
      {"factorization", "g <= c f^e on K = {h = 0} (files F, G, H)",
       [](const Config &cfg, std::ostream &out) {
         const auto ms = load(cfg, 3);
         const auto c = point_or_origin(cfg.center, ms[0].num_vars(), "--center");
         return emit_report(cfg,
                            verify_factorization(ms[0], ms[1], ms[2], c,
                                                 cfg.radius, plan_of(cfg)),
                            out);
       }},
      {"global", "global bound on growing spheres",
       [](const Config &cfg, std::ostream &out) {
         const auto f = load(cfg, 1).front();
         return emit_report(cfg, verify_global(f, global_radii(cfg), plan_of(cfg)),
                            out);
       }},
      {"compact-tail", "decay bound for |x| >= --r-big",
       [](const Config &cfg, std::ostream &out) {
         const auto f = load(cfg, 1).front();
         return emit_report(cfg,
                            verify_compact_tail(f, global_radii(cfg), cfg.r_big,
                                                plan_of(cfg)),
                            out);
       }},
      {"good-at-infinity", "sampled slope minima on growing spheres",
       [](const Config &cfg, std::ostream &out) {
         const auto f = load(cfg, 1).front();
         const auto g = check_good_at_infinity(f, global_radii(cfg), plan_of(cfg));
         emit_json_or_text(cfg, goodness_to_json(g), goodness_to_text(g), out);
         return g.good ? exit_pass : exit_fail;
       }},
      {"holder", "global distance bound for matrices good at infinity",
       [](const Config &cfg, std::ostream &out) {
         const auto f = load(cfg, 1).front();
         return emit_report(
             cfg, verify_holder_global(f, global_radii(cfg), plan_of(cfg)), out);
       }},
  };
}

void add_output(CLI::App &sub, Config &cfg) {
  sub.add_option("--format", cfg.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  sub.add_option("--out", cfg.out, "write the report here instead of stdout");
}

void add_matrices(CLI::App &sub, Config &cfg) {
  sub.add_option("-m,--matrix", cfg.matrices, "matrix JSON file (repeatable)")
      ->check(CLI::ExistingFile);
}

void add_tolerances(CLI::App &sub, Config &cfg) {
  sub.add_option("--zero-tol", cfg.zero_tol, "f <= this counts as zero")
      ->capture_default_str();
  sub.add_option("--eig-tol", cfg.eig_tol, "relative eigenspace tolerance")
      ->capture_default_str();
  sub.add_option("--dist-tol", cfg.dist_tol, "zero tolerance for distances")
      ->capture_default_str();
  sub.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub.add_option("--sphere-samples", cfg.sphere_samples,
                 "samples on eigenspace spheres")
      ->capture_default_str();
  sub.add_option("--restarts", cfg.restarts, "distance search restarts")
      ->capture_default_str();
}

void add_plan(CLI::App &sub, Config &cfg) {
  add_tolerances(sub, cfg);
  sub.add_option("--samples", cfg.samples, "samples per radius")
      ->capture_default_str();
  sub.add_option("--radii", cfg.radii, "comma-separated radius schedule");
  sub.add_option("--workers", cfg.workers,
                 "worker threads (default: SVLOJA_WORKERS or all cores)");
}

int dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  Config cfg;
  Action action;
  CLI::App app{"Empirical checks of smallest-singular-value inequalities",
               "svloja"};
  app.require_subcommand(1);

  auto *ex = app.add_subcommand("exponents", "exact exponent bounds");
  ex->add_option("--n", cfg.n, "number of variables");
  ex->add_option("--p", cfg.p, "rows of F");
  ex->add_option("--p2", cfg.p2, "rows of a second matrix (pairwise bounds)");
  ex->add_option("--d", cfg.d, "degree");
  add_matrices(*ex, cfg);
  add_output(*ex, cfg);
  ex->callback([&] { action = cmd_exponents; });

  auto *ev = app.add_subcommand("eval", "evaluate F and f at --x");
  add_matrices(*ev, cfg);
  ev->add_option("--x", cfg.x, "point, comma-separated");
  add_output(*ev, cfg);
  ev->callback([&] { action = cmd_eval; });

  auto *sl = app.add_subcommand("slope", "nonsmooth slope at --x");
  add_matrices(*sl, cfg);
  sl->add_option("--x", cfg.x, "point, comma-separated");
  sl->add_option("--base", cfg.base, "base point for f~ (default: base value 0)");
  add_tolerances(*sl, cfg);
  add_output(*sl, cfg);
  sl->callback([&] { action = cmd_slope; });

  auto *gc = app.add_subcommand("grad-check",
                                "gradient against central differences");
  add_matrices(*gc, cfg);
  gc->add_option("--x", cfg.x, "point, comma-separated");
  gc->add_option("--step", cfg.h, "difference step")->capture_default_str();
  add_tolerances(*gc, cfg);
  add_output(*gc, cfg);
  gc->callback([&] { action = cmd_grad_check; });

  auto *fi = app.add_subcommand("fit", "fit the empirical exponent at --base");
  add_matrices(*fi, cfg);
  fi->add_option("--base", cfg.base, "base point, comma-separated");
  add_plan(*fi, cfg);
  add_output(*fi, cfg);
  fi->callback([&] { action = cmd_fit; });

  auto *di = app.add_subcommand("dist", "distance from --x to the zero set");
  add_matrices(*di, cfg);
  di->add_option("--x", cfg.x, "point, comma-separated");
  add_tolerances(*di, cfg);
  add_output(*di, cfg);
  di->callback([&] { action = cmd_dist; });

  auto *ve = app.add_subcommand("verify", "sample an inequality");
  ve->require_subcommand(1);
  for (auto &v : verifiers()) {
    auto *sub = ve->add_subcommand(v.name, v.help);
    add_matrices(*sub, cfg);
    add_plan(*sub, cfg);
    add_output(*sub, cfg);
    sub->add_option("--base", cfg.base, "base point (gradient)");
    sub->add_flag("--at-zero", cfg.at_zero,
                  "use the exponent for f(base) = 0 (gradient)");
    sub->add_option("--center", cfg.center, "ball center (default: origin)");
    sub->add_option("--radius", cfg.radius, "ball radius")->capture_default_str();
    sub->add_option("--r-big", cfg.r_big, "tail radius (compact-tail)")
        ->capture_default_str();
    sub->callback([&, act = v.action] { action = act; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }
  return action(cfg, out);
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  try {
    return dispatch(args, out, err);
  } catch (const PreconditionError &e) {
    err << "precondition failed: " << e.what() << '\n';
    return exit_precondition;
  } catch (const NumericalError &e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_inconclusive;
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

int run(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

} // namespace svloja::cli
