#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace svloja {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Malformed matrix document (JSON shape, ragged rows, bad entries).
class SchemaError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

// Eigensolver failure, non-finite values, internal consistency breaks.
class NumericalError : public Error {
public:
  using Error::Error;
};

// A hypothesis of the inequality being checked does not hold (or could not
// be established). The CLI maps these to exit code 3.
class PreconditionError : public Error {
public:
  using Error::Error;
};

class NoZeroFound : public PreconditionError {
public:
  explicit NoZeroFound(const std::string &detail)
      : PreconditionError("no zero found: " + detail) {}
};

class InclusionViolated : public PreconditionError {
public:
  explicit InclusionViolated(std::vector<std::vector<double>> witnesses);

  const std::vector<std::vector<double>> &witnesses() const noexcept {
    return witnesses_;
  }

private:
  std::vector<std::vector<double>> witnesses_;
};

} // namespace svloja
