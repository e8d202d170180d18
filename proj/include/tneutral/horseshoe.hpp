#pragma once

#include <optional>
#include <vector>

#include "tneutral/surface.hpp"

namespace tneutral {

// Linear horseshoe with contraction rates eta1, eta2 (eta1 + eta2 < 1),
// conjugate to the full 2-shift. Symbol 0 is the strip C_1, symbol 1 is C_2.
struct Horseshoe {
  double eta1;
  double eta2;

  // Throws InvalidArgument.
  static Horseshoe make(double eta1, double eta2);
  // eta1 = 0.9703, eta2 = eta1^117.
  static Horseshoe non_uniqueness_example();
};

TwoPotentialSystem induced_system(const Horseshoe& hs);

// Bernoulli(p, 1 - p) quantities in closed form.
struct BernoulliStats {
  double p = 0.0;
  double h = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double dim = 0.0;
  double hr = 0.0;
};

BernoulliStats bernoulli_stats(const Horseshoe& hs, double p, double r);

struct HalfDerivatives {
  double first = 0.0;
  double second = 0.0;
};

// d/dp and d^2/dp^2 of h^r at p = 1/2.
HalfDerivatives hr_derivatives_at_half(const Horseshoe& hs, double r);

struct BernoulliMaximizer {
  double p = 0.0;
  double hr = 0.0;
};

// Local maxima of p -> h^r(p) on (0, 1), sorted by p.
std::vector<BernoulliMaximizer> find_bernoulli_maximizers(const Horseshoe& hs, double r,
                                                          int grid_n = 2001);

// Global maximizer of h^r among Bernoulli measures; smallest p on ties.
// r = +inf maximizes dim.
BernoulliMaximizer best_bernoulli(const Horseshoe& hs, double r, int grid_n = 2001);

// Argmax of dim(p); smallest p when the maximum is attained twice.
double mmhd_bernoulli(const Horseshoe& hs, int grid_n = 2001);

// Root in r of the second derivative of h^r at 1/2, located by scanning
// [0, r_max] and bisecting. nullopt when no sign change occurs.
std::optional<double> critical_r(const Horseshoe& hs, double r_max = 10.0, int scan_n = 1000);

}  // namespace tneutral
