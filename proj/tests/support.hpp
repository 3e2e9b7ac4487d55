#pragma once

#include <algorithm>
#include <cmath>

namespace testutil {

inline double rel_err(double a, double b, double scale = 0.0) {
  const double d = std::abs(a - b);
  const double s = std::max({std::abs(a), std::abs(b), scale});
  return s == 0.0 ? d : d / s;
}

inline bool close(double a, double b, double rel = 1e-10, double abs = 1e-14) {
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

}  // namespace testutil
