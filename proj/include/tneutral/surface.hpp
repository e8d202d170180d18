#pragma once

#include "tneutral/cycles.hpp"
#include "tneutral/markov.hpp"
#include "tneutral/sft.hpp"
#include "tneutral/thermo.hpp"

namespace tneutral {

// phi_u = log of unstable expansion (> 0 on average over every cycle),
// phi_s = log of stable contraction (< 0 on average over every cycle).
class TwoPotentialSystem {
 public:
  // Throws InvalidArgument on dimension mismatch or when a cycle violates
  // hyperbolicity; NotPrimitive when the shift is not mixing.
  TwoPotentialSystem(Sft sft, LocallyConstantPotential phi_u, LocallyConstantPotential phi_s);

  const Sft& sft() const noexcept { return sft_; }
  const LocallyConstantPotential& phi_u() const noexcept { return phi_u_; }
  const LocallyConstantPotential& phi_s() const noexcept { return phi_s_; }

  // -p phi_u + q phi_s
  LocallyConstantPotential potential(double p, double q) const;

 private:
  Sft sft_;
  LocallyConstantPotential phi_u_;
  LocallyConstantPotential phi_s_;
};

enum class Direction { Unstable, Stable };

struct EquilibriumPoint {
  double p = 0.0;
  double q = 0.0;
  double Q = 0.0;
  double lambda_u = 0.0;
  double lambda_s = 0.0;
  double h = 0.0;
  double d_u = 0.0;
  double d_s = 0.0;
  double dim = 0.0;
  MarkovMeasure measure;
};

// Equilibrium state nu_{p,q} of -p phi_u + q phi_s with its exponents,
// entropy and dimension.
EquilibriumPoint eval_point(const TwoPotentialSystem& sys, double p, double q,
                            const PressureOptions& opts = {});

// Q(p, q) alone.
double pressure_surface(const TwoPotentialSystem& sys, double p, double q,
                        const PressureOptions& opts = {});

struct DerivativeResiduals {
  double u = 0.0;
  double s = 0.0;
};

// |lambda_u + dQ/dp| and |lambda_s - dQ/dq| with central differences.
DerivativeResiduals derivative_check(const TwoPotentialSystem& sys, double p, double q,
                                     double step);

ExponentInterval exponent_range(const TwoPotentialSystem& sys, Direction which);
bool is_cohomologous_to_constant(const TwoPotentialSystem& sys, Direction which);

// q with lambda_s(p, q) = b. Throws TargetOutOfRange / Degenerate.
double gamma_s(const TwoPotentialSystem& sys, double p, double b);
// p with lambda_u(p, q) = a. Throws TargetOutOfRange / Degenerate.
double gamma_u(const TwoPotentialSystem& sys, double q, double a);

inline double neutralized_entropy(const EquilibriumPoint& point, double r) {
  return point.h + r * point.dim;
}

}  // namespace tneutral
