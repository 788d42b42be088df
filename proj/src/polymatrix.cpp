#include "svloja/polymatrix.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "svloja/errors.hpp"

namespace svloja {

PolyMatrix::PolyMatrix(std::vector<std::string> vars,
                       std::vector<std::vector<Polynomial>> entries,
                       std::string name)
    : vars_(std::move(vars)), name_(std::move(name)) {
  if (vars_.empty())
    throw SchemaError("matrix must declare at least one variable");
  if (entries.empty() || entries.front().empty())
    throw SchemaError("matrix must have at least one row and one column");
  const std::size_t q = entries.front().size();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != q)
      throw SchemaError("ragged rows: row " + std::to_string(i) + " has " +
                        std::to_string(entries[i].size()) +
                        " entries, expected " + std::to_string(q));
    for (const auto &e : entries[i])
      if (e.num_vars() != vars_.size())
        throw DimensionError("entry variable count differs from matrix");
  }
  if (entries.size() > q) {
    std::vector<std::vector<Polynomial>> t(q,
                                           std::vector<Polynomial>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = 0; j < q; ++j)
        t[j][i] = std::move(entries[i][j]);
    entries = std::move(t);
    transposed_ = true;
  }
  entries_ = std::move(entries);
  for (const auto &row : entries_)
    for (const auto &e : row)
      degree_ = std::max(degree_, e.degree());
}

void PolyMatrix::require_positive_degree() const {
  if (degree_ == 0)
    throw PreconditionError(
        "matrix is constant (degree 0); the exponent bounds need degree > 0");
}

void PolyMatrix::check_point(std::span<const double> x) const {
  if (x.size() != num_vars())
    throw DimensionError("point has " + std::to_string(x.size()) +
                         " coordinates, matrix has " +
                         std::to_string(num_vars()) + " variables");
  for (double v : x)
    if (!std::isfinite(v))
      throw NumericalError("non-finite coordinate in evaluation point");
}

Matrix PolyMatrix::evaluate(std::span<const double> x) const {
  check_point(x);
  Matrix m(rows(), cols());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      m(i, j) = entries_[i][j].evaluate(x);
  return m;
}

Matrix PolyMatrix::gram(std::span<const double> x) const {
  const Matrix f = evaluate(x);
  const std::size_t p = rows();
  Matrix g(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      g(i, j) = dot(f.row(i), f.row(j));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) {
      const double avg = 0.5 * (g(i, j) + g(j, i));
      g(i, j) = g(j, i) = avg;
    }
  return g;
}

std::vector<std::vector<Polynomial>> PolyMatrix::gram_polynomials() const {
  const std::size_t p = rows();
  std::vector<std::vector<Polynomial>> out(p, std::vector<Polynomial>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      PolynomialBuilder b(num_vars());
      for (std::size_t k = 0; k < cols(); ++k)
        b.add(mul(entries_[i][k], entries_[j][k]));
      out[i][j] = b.build();
      out[j][i] = out[i][j];
    }
  return out;
}

PolyMatrix load_matrix(const nlohmann::json &doc) {
  if (!doc.is_object())
    throw SchemaError("matrix document must be a JSON object");
  if (!doc.contains("vars") || !doc["vars"].is_array())
    throw SchemaError("missing array field \"vars\"");
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw SchemaError("missing array field \"entries\"");
  for (const auto &[key, value] : doc.items()) {
    if (key != "vars" && key != "entries" && key != "name" && key != "comment")
      throw SchemaError("unknown field \"" + key + "\"");
    if ((key == "name" || key == "comment") && !value.is_string())
      throw SchemaError("field \"" + key + "\" must be a string");
  }

  std::vector<std::string> vars;
  for (const auto &v : doc["vars"]) {
    if (!v.is_string())
      throw SchemaError("\"vars\" must contain strings");
    vars.push_back(v.get<std::string>());
  }

  std::vector<std::vector<Polynomial>> entries;
  const auto &rows = doc["entries"];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array())
      throw SchemaError("\"entries\" row " + std::to_string(i) +
                        " is not an array");
    std::vector<Polynomial> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const auto &cell = rows[i][j];
      if (!cell.is_string())
        throw SchemaError("entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") must be a string");
      try {
        row.push_back(parse_polynomial(cell.get<std::string>(), vars));
      } catch (const Error &e) {
        throw SchemaError("entry (" + std::to_string(i) + "," +
                          std::to_string(j) + "): " + e.what());
      }
    }
    entries.push_back(std::move(row));
  }
  return PolyMatrix(std::move(vars), std::move(entries),
                    doc.value("name", std::string{}));
}

PolyMatrix load_matrix_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open matrix file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
  return load_matrix(doc);
}

std::uint32_t common_degree(std::span<const PolyMatrix *const> matrices) {
  std::uint32_t d = 0;
  for (const auto *m : matrices) {
    if (!matrices.empty() && m->num_vars() != matrices.front()->num_vars())
      throw DimensionError("matrices live in different variable counts");
    d = std::max(d, m->degree());
  }
  return d;
}

} // namespace svloja
