#include "svloja/report.hpp"

#include <cmath>
#include <sstream>

#include "svloja/errors.hpp"
#include "svloja/format.hpp"

namespace svloja {

using nlohmann::json;

namespace {

json number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json &j, const char *what) {
  if (j.is_number())
    return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf")
      return INFINITY;
    if (s == "-inf")
      return -INFINITY;
    if (s == "nan")
      return NAN;
  }
  throw SchemaError(std::string("field '") + what + "' is not a number");
}

const json &field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T> T read(const json &j, const char *key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception &) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

BigNat big(const json &j, const char *key) {
  const auto s = read<std::string>(j, key);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw SchemaError(std::string("field '") + key + "' is not a natural number");
  return BigNat(BigNat::Rep(s));
}

std::string join(std::span<const double> x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += (i ? ";" : "") + format_double(x[i]);
  return s;
}

std::string_view constant_name(ConstantKind k) {
  return k == ConstantKind::min ? "min" : "max";
}

} // namespace

json exponent_to_json(const ExponentBound &e) {
  return {{"kind", std::string(to_string(e.kind))},
          {"numerator", e.numerator.to_string()},
          {"denominator", e.denominator.to_string()},
          {"value", number(e.as_float)}};
}

ExponentBound exponent_from_json(const json &j) {
  try {
    auto e = ExponentBound::make(big(j, "numerator"), big(j, "denominator"),
                                 bound_kind_from_string(read<std::string>(j, "kind")));
    return e;
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(std::string("bad exponent: ") + e.what());
  }
}

json report_to_json(const VerificationReport &r) {
  json records = json::array();
  for (const auto &s : r.records) {
    json point = json::array();
    for (double v : s.point)
      point.push_back(number(v));
    records.push_back({{"radius", number(s.radius)},
                       {"point", point},
                       {"f", number(s.f)},
                       {"slope", s.slope ? number(*s.slope) : json(nullptr)},
                       {"multiplicity", s.multiplicity},
                       {"lhs", number(s.lhs)},
                       {"rhs", number(s.rhs)},
                       {"ratio", number(s.ratio)},
                       {"excluded", s.excluded},
                       {"auto_pass", s.auto_pass}});
  }
  return {{"inequality_id", r.inequality_id},
          {"exponent_used", exponent_to_json(r.exponent_used)},
          {"constant_kind", std::string(constant_name(r.constant_kind))},
          {"empirical_constant", number(r.empirical_constant)},
          {"excluded_count", r.excluded_count},
          {"auto_pass_count", r.auto_pass_count},
          {"fitted_exponent",
           r.fitted_exponent ? number(*r.fitted_exponent) : json(nullptr)},
          {"fit_r_squared",
           r.fit_r_squared ? number(*r.fit_r_squared) : json(nullptr)},
          {"verdict", std::string(to_string(r.verdict))},
          {"notes", r.notes},
          {"records", records}};
}

VerificationReport report_from_json(const json &j) {
  VerificationReport r;
  r.inequality_id = read<std::string>(j, "inequality_id");
  r.exponent_used = exponent_from_json(field(j, "exponent_used"));
  const auto kind = read<std::string>(j, "constant_kind");
  if (kind != "min" && kind != "max")
    throw SchemaError("constant_kind must be 'min' or 'max'");
  r.constant_kind = kind == "min" ? ConstantKind::min : ConstantKind::max;
  r.empirical_constant =
      read_number(field(j, "empirical_constant"), "empirical_constant");
  r.excluded_count = read<std::size_t>(j, "excluded_count");
  r.auto_pass_count = read<std::size_t>(j, "auto_pass_count");
  if (const auto &v = field(j, "fitted_exponent"); !v.is_null())
    r.fitted_exponent = read_number(v, "fitted_exponent");
  if (const auto &v = field(j, "fit_r_squared"); !v.is_null())
    r.fit_r_squared = read_number(v, "fit_r_squared");
  try {
    r.verdict = verdict_from_string(read<std::string>(j, "verdict"));
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(e.what());
  }
  r.notes = read<std::vector<std::string>>(j, "notes");
  const auto &records = field(j, "records");
  if (!records.is_array())
    throw SchemaError("field 'records' is not an array");
  for (const auto &s : records) {
    SampleRecord rec;
    rec.radius = read_number(field(s, "radius"), "radius");
    const auto &point = field(s, "point");
    if (!point.is_array())
      throw SchemaError("field 'point' is not an array");
    for (const auto &v : point)
      rec.point.push_back(read_number(v, "point"));
    rec.f = read_number(field(s, "f"), "f");
    if (const auto &v = field(s, "slope"); !v.is_null())
      rec.slope = read_number(v, "slope");
    rec.multiplicity = read<std::size_t>(s, "multiplicity");
    rec.lhs = read_number(field(s, "lhs"), "lhs");
    rec.rhs = read_number(field(s, "rhs"), "rhs");
    rec.ratio = read_number(field(s, "ratio"), "ratio");
    rec.excluded = read<bool>(s, "excluded");
    rec.auto_pass = read<bool>(s, "auto_pass");
    r.records.push_back(std::move(rec));
  }
  return r;
}

std::string report_to_csv(const VerificationReport &r) {
  std::ostringstream out;
  out << "radius,point,f,slope,lhs,rhs,ratio,excluded,multiplicity\n";
  for (const auto &s : r.records) {
    out << format_double(s.radius) << ',' << join(s.point) << ','
        << format_double(s.f) << ',' << (s.slope ? format_double(*s.slope) : "")
        << ',' << format_double(s.lhs) << ',' << format_double(s.rhs) << ','
        << format_double(s.ratio) << ',' << (s.excluded ? "true" : "false")
        << ',' << s.multiplicity << '\n';
  }
  return out.str();
}

std::string report_to_text(const VerificationReport &r) {
  std::ostringstream out;
  out << "inequality:         " << r.inequality_id << '\n'
      << "exponent:           " << r.exponent_used.fraction() << " ("
      << format_double(r.exponent_used.as_float) << ", "
      << to_string(r.exponent_used.kind) << ")\n"
      << "samples:            " << r.records.size() << '\n'
      << "excluded:           " << r.excluded_count << '\n'
      << "auto-pass:          " << r.auto_pass_count << '\n'
      << "empirical constant: " << format_double(r.empirical_constant) << " ("
      << constant_name(r.constant_kind) << " ratio)\n";
  if (r.fitted_exponent)
    out << "fitted exponent:    " << format_double(*r.fitted_exponent)
        << " (R^2 " << format_double(r.fit_r_squared.value_or(NAN)) << ")\n";
  out << "verdict:            " << to_string(r.verdict) << '\n';
  for (const auto &n : r.notes)
    out << "note: " << n << '\n';
  return out.str();
}

json goodness_to_json(const GoodnessResult &g) {
  json minima = json::array();
  for (double v : g.sphere_minima)
    minima.push_back(number(v));
  return {{"good", g.good},
          {"certified", g.certified},
          {"c_hat", number(g.c_hat)},
          {"R_hat", number(g.r_hat)},
          {"radii", g.radii},
          {"sphere_minima", minima},
          {"notes", g.notes}};
}

std::string goodness_to_text(const GoodnessResult &g) {
  std::ostringstream out;
  out << "verdict: " << (g.good ? "empirically good" : "empirically not good")
      << " (not certified)\n"
      << "c_hat:   " << format_double(g.c_hat) << '\n'
      << "R_hat:   " << format_double(g.r_hat) << '\n';
  for (std::size_t k = 0; k < g.radii.size(); ++k)
    out << "  R = " << format_double(g.radii[k])
        << "  min slope = " << format_double(g.sphere_minima[k]) << '\n';
  for (const auto &n : g.notes)
    out << "note: " << n << '\n';
  return out.str();
}

std::string dump_json(const json &j) { return j.dump(2) + "\n"; }

} // namespace svloja
