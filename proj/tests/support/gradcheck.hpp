#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace ultrafit::testing {

/// max_i |a_i - b_i| relative to max(||b||_inf, floor).
inline double relative_error(std::span<const double> a, std::span<const double> b,
                             double floor = 1e-12) {
  double diff = 0.0, scale = floor;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / scale;
}

}  // namespace ultrafit::testing
