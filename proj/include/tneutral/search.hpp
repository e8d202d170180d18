#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace tneutral {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a maximum of a unimodal f on [lo, hi], stopping
// when the bracket is narrower than tol.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol);

// Indices of strict local maxima of a sampled curve. Runs of equal values
// (within plateau_tol) count as one candidate, reported at the run's middle.
// Endpoints are never returned.
std::vector<std::size_t> grid_local_maxima(const std::vector<double>& values,
                                           double plateau_tol = 1e-14);

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace tneutral
