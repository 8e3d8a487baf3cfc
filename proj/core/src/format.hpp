#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace dixie::detail {

// Shortest %g form that parses back to the same double.
inline std::string shortest(double value) {
  char buf[40];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    if (std::strtod(buf, nullptr) == value) return buf;
  }
  return buf;
}

}  // namespace dixie::detail
