#include "tneutral/surface.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <string>

#include "tneutral/error.hpp"

namespace tneutral {

TwoPotentialSystem::TwoPotentialSystem(Sft sft, LocallyConstantPotential phi_u,
                                       LocallyConstantPotential phi_s)
    : sft_(std::move(sft)), phi_u_(std::move(phi_u)), phi_s_(std::move(phi_s)) {
  if (phi_u_.k() != sft_.k() || phi_s_.k() != sft_.k()) {
    throw Error(ErrorKind::InvalidArgument, "potential alphabet does not match the shift");
  }
  if (!sft_.primitive()) {
    throw Error(ErrorKind::NotPrimitive, "two-potential system requires a primitive shift");
  }
  const auto u = cycle_mean_range(sft_, phi_u_);
  const auto s = cycle_mean_range(sft_, phi_s_);
  if (!(u.min > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "phi_u has a cycle with non-positive mean " + std::to_string(u.min));
  }
  if (!(s.max < 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "phi_s has a cycle with non-negative mean " + std::to_string(s.max));
  }
}

LocallyConstantPotential TwoPotentialSystem::potential(double p, double q) const {
  return LocallyConstantPotential::combine(-p, phi_u_, q, phi_s_);
}

EquilibriumPoint eval_point(const TwoPotentialSystem& sys, double p, double q,
                            const PressureOptions& opts) {
  auto eq = equilibrium_of(sys.sft(), sys.potential(p, q), opts);
  EquilibriumPoint pt{.p = p, .q = q, .measure = std::move(eq.measure)};
  pt.Q = eq.pressure.pressure;
  pt.lambda_u = integrate(sys.phi_u(), pt.measure);
  pt.lambda_s = integrate(sys.phi_s(), pt.measure);
  pt.h = pt.Q + p * pt.lambda_u - q * pt.lambda_s;
  if (pt.h < 0.0) {
    if (pt.h < -1e-12) {
      throw Error(ErrorKind::PositivityViolated,
                  "negative entropy " + std::to_string(pt.h) + " at (p, q) = (" +
                      std::to_string(p) + ", " + std::to_string(q) + ")");
    }
    std::cerr << "warning: clamping entropy " << pt.h << " to 0 at (" << p << ", " << q
              << ")\n";
    pt.h = 0.0;
  }
  pt.d_u = pt.h / pt.lambda_u;
  pt.d_s = -pt.h / pt.lambda_s;
  pt.dim = pt.d_u + pt.d_s;
  return pt;
}

double pressure_surface(const TwoPotentialSystem& sys, double p, double q,
                        const PressureOptions& opts) {
  return pressure_of(sys.sft(), sys.potential(p, q), opts).pressure;
}

DerivativeResiduals derivative_check(const TwoPotentialSystem& sys, double p, double q,
                                     double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "derivative step must be > 0");
  const auto pt = eval_point(sys, p, q);
  const double dq_dp =
      (pressure_surface(sys, p + step, q) - pressure_surface(sys, p - step, q)) / (2.0 * step);
  const double dq_dq =
      (pressure_surface(sys, p, q + step) - pressure_surface(sys, p, q - step)) / (2.0 * step);
  return {std::abs(pt.lambda_u + dq_dp), std::abs(pt.lambda_s - dq_dq)};
}

ExponentInterval exponent_range(const TwoPotentialSystem& sys, Direction which) {
  return cycle_mean_range(sys.sft(), which == Direction::Unstable ? sys.phi_u() : sys.phi_s());
}

bool is_cohomologous_to_constant(const TwoPotentialSystem& sys, Direction which) {
  return exponent_range(sys, which).empty_interior();
}

namespace {

constexpr double kBracketCap = 1e6;
constexpr double kRootTolerance = 1e-10;

// Root of an increasing function g on the real line. g values are residuals
// (exponent - target).
double solve_increasing(const std::function<double(double)>& g) {
  double lo = -1.0;
  double hi = 1.0;
  try {
    double glo = g(lo);
    while (glo > 0.0) {
      hi = lo;
      lo *= 2.0;
      if (-lo > kBracketCap) throw Error(ErrorKind::TargetOutOfRange, "bracket cap exceeded");
      glo = g(lo);
    }
    double ghi = g(hi);
    while (ghi < 0.0) {
      lo = hi;
      hi = hi > 0.0 ? 2.0 * hi : 1.0;
      if (hi > kBracketCap) throw Error(ErrorKind::TargetOutOfRange, "bracket cap exceeded");
      ghi = g(hi);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TargetOutOfRange) throw;
    throw Error(ErrorKind::TargetOutOfRange,
                std::string("target not reachable before numerics failed: ") + e.what());
  }
  double best = 0.5 * (lo + hi);
  double best_abs = std::abs(g(best));
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) < best_abs) {
      best = mid;
      best_abs = std::abs(gm);
    }
    if (gm == 0.0 || (best_abs < kRootTolerance * 1e-2) || hi - lo <= 4e-16 * std::max(1.0, std::abs(mid))) {
      break;
    }
    if (gm < 0.0) lo = mid; else hi = mid;
  }
  if (!(best_abs < kRootTolerance)) {
    throw Error(ErrorKind::NoConvergence,
                "root residual " + std::to_string(best_abs) + " above tolerance");
  }
  return best;
}

}  // namespace

double gamma_s(const TwoPotentialSystem& sys, double p, double b) {
  const auto range = exponent_range(sys, Direction::Stable);
  if (range.empty_interior()) {
    throw Error(ErrorKind::Degenerate, "phi_s is cohomologous to a constant");
  }
  if (!range.contains_strictly(b)) {
    throw Error(ErrorKind::TargetOutOfRange, "target " + std::to_string(b) + " outside I_s");
  }
  // lambda_s(p, .) is increasing.
  return solve_increasing([&](double q) { return eval_point(sys, p, q).lambda_s - b; });
}

double gamma_u(const TwoPotentialSystem& sys, double q, double a) {
  const auto range = exponent_range(sys, Direction::Unstable);
  if (range.empty_interior()) {
    throw Error(ErrorKind::Degenerate, "phi_u is cohomologous to a constant");
  }
  if (!range.contains_strictly(a)) {
    throw Error(ErrorKind::TargetOutOfRange, "target " + std::to_string(a) + " outside I_u");
  }
  // lambda_u(., q) is decreasing.
  return solve_increasing([&](double p) { return a - eval_point(sys, p, q).lambda_u; });
}

}  // namespace tneutral
