#pragma once

#include <charconv>
#include <span>
#include <string>

namespace svloja {

// Shortest round-trip decimal form of v ("inf", "-inf", "nan" for
// non-finite values).
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_point(std::span<const double> x,
                                const char *sep = ", ") {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i)
      s += sep;
    s += format_double(x[i]);
  }
  return s + ")";
}

} // namespace svloja
