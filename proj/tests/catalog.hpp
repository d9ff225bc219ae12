#pragma once

#include <vector>

#include "ivol/bodies.hpp"

// Shared fixture grid: balls, cubes, and mixed-side parallelotopes with
// dimensions up to 64 and scales in {0.5, 1, 2, 4}.

namespace ivol::testing {

inline std::vector<LogSequence> catalog_sequences(int max_n = 64) {
  std::vector<LogSequence> out;
  const std::vector<int> dims{1, 2, 3, 4, 6, 8, 16, 32, 64};
  const std::vector<double> scales{0.5, 1.0, 2.0, 4.0};
  for (int n : dims) {
    if (n > max_n) continue;
    for (double s : scales) {
      out.push_back(intrinsic_ball(n, s));
      out.push_back(intrinsic_cube(n, s));
    }
  }
  // mixed-side boxes
  for (std::vector<double> sides : std::vector<std::vector<double>>{
           {0.5, 2.0},
           {0.5, 1.0, 4.0},
           {0.5, 1.0, 2.0, 4.0},
           {4.0, 4.0, 0.5, 0.5, 1.0, 2.0}}) {
    if (static_cast<int>(sides.size()) <= max_n) {
      out.push_back(intrinsic_parallelotope(sides));
    }
  }
  return out;
}

}  // namespace ivol::testing
