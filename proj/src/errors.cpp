#include "svloja/errors.hpp"

#include <sstream>

namespace svloja {

namespace {

std::string describe(const std::vector<std::vector<double>> &witnesses) {
  std::ostringstream os;
  os.precision(17);
  os << "inclusion hypothesis violated at";
  for (const auto &w : witnesses) {
    os << " (";
    for (std::size_t k = 0; k < w.size(); ++k)
      os << (k ? ", " : "") << w[k];
    os << ")";
  }
  return os.str();
}

} // namespace

InclusionViolated::InclusionViolated(std::vector<std::vector<double>> witnesses)
    : PreconditionError(describe(witnesses)),
      witnesses_(std::move(witnesses)) {}

} // namespace svloja
