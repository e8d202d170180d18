#pragma once

#include "tneutral/sft.hpp"
#include "tneutral/thermo.hpp"

namespace tneutral {

// Cycles with max - min below this are treated as one value (cohomologous to
// a constant).
inline constexpr double kCohomologyTolerance = 1e-9;

struct ExponentInterval {
  double min = 0.0;
  double max = 0.0;

  bool empty_interior(double tol = kCohomologyTolerance) const { return max - min < tol; }
  bool contains_strictly(double x) const { return x > min && x < max; }
  double width() const { return max - min; }
};

// Minimum and maximum mean of phi over cycles of the adjacency graph (Karp).
// For locally constant phi these are the extremes of the integral of phi over
// invariant measures.
ExponentInterval cycle_mean_range(const Sft& sft, const LocallyConstantPotential& phi);

bool cohomologous_to_constant(const Sft& sft, const LocallyConstantPotential& phi,
                              double tol = kCohomologyTolerance);

}  // namespace tneutral
