#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "svloja/dense.hpp"
#include "svloja/poly.hpp"

namespace svloja {

// p×q matrix of polynomials with p <= q. Documents with more rows than
// columns are stored transposed; singular values do not change.
class PolyMatrix {
public:
  PolyMatrix(std::vector<std::string> vars,
             std::vector<std::vector<Polynomial>> entries,
             std::string name = {});

  std::size_t num_vars() const noexcept { return vars_.size(); }
  std::size_t rows() const noexcept { return entries_.size(); }
  std::size_t cols() const noexcept {
    return entries_.empty() ? 0 : entries_.front().size();
  }
  const std::vector<std::string> &vars() const noexcept { return vars_; }
  const Polynomial &entry(std::size_t i, std::size_t j) const {
    return entries_[i][j];
  }
  const std::string &name() const noexcept { return name_; }
  bool transposed() const noexcept { return transposed_; }

  // Maximum total degree over the entries.
  std::uint32_t degree() const noexcept { return degree_; }
  // Throws PreconditionError when degree() == 0.
  void require_positive_degree() const;

  Matrix evaluate(std::span<const double> x) const;
  // F(x) F(x)^T, symmetrised.
  Matrix gram(std::span<const double> x) const;
  // Entry (i, j) is <F_i, F_j> as an exact polynomial.
  std::vector<std::vector<Polynomial>> gram_polynomials() const;

private:
  void check_point(std::span<const double> x) const;

  std::vector<std::string> vars_;
  std::vector<std::vector<Polynomial>> entries_;
  std::string name_;
  std::uint32_t degree_ = 0;
  bool transposed_ = false;
};

PolyMatrix load_matrix(const nlohmann::json &document);
PolyMatrix load_matrix_file(const std::string &path);

// Degree shared by a family of matrices (the d of the multi-matrix bounds).
std::uint32_t common_degree(std::span<const PolyMatrix *const> matrices);

} // namespace svloja
