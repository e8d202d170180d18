#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tneutral/horseshoe.hpp"
#include "tneutral/kernels.hpp"
#include "tneutral/surface.hpp"

namespace tneutral {

struct RSweepRecord {
  double r = 0.0;  // +inf means dim alone was maximized
  double p = 0.0;
  double q = 0.0;
  double hr_max = 0.0;
  double h = 0.0;
  double dim = 0.0;
  bool edge_hit = false;  // argmax on the search box boundary
};

struct FamilySearchOptions {
  double box = 5.0;       // search [-box, box]^2
  int grid_n = 41;        // coarse grid points per axis
  double param_tol = 1e-8;
  int rounds = 3;         // coordinate golden-section rounds
  PressureOptions pressure{};
};

// R_r(p, q) = h + r (d_u + d_s); dim alone for r = +inf.
double neutralized_objective(const EquilibriumPoint& point, double r);

// Maximizes R_r over the equilibrium family nu_{p,q}.
RSweepRecord maximize_over_family(const TwoPotentialSystem& sys, double r,
                                  const FamilySearchOptions& opts = {},
                                  Backend backend = Backend::Parallel);

// One record per r, ascending in r.
std::vector<RSweepRecord> sweep(const TwoPotentialSystem& sys, std::vector<double> r_values,
                                const FamilySearchOptions& opts = {},
                                Backend backend = Backend::Parallel);

// Same sweep restricted to Bernoulli measures of a horseshoe.
struct BernoulliSweepRecord {
  double r = 0.0;
  double p = 0.0;  // smallest global maximizer
  double hr_max = 0.0;
  double h = 0.0;
  double dim = 0.0;
  std::size_t maximizer_count = 0;  // global maximizers (1 or 2)
};

std::vector<BernoulliSweepRecord> sweep_bernoulli(const Horseshoe& hs,
                                                  std::vector<double> r_values,
                                                  int grid_n = 2001,
                                                  Backend backend = Backend::Parallel);

enum class RigidityBranch { None, BothConstant, Combination };

struct RigidityReport {
  double alpha = 0.0;  // lambda_u(0,0)^2 / lambda_s(0,0)^2
  ExponentInterval u_range;
  ExponentInterval s_range;
  ExponentInterval psi_range;  // cycle means of -phi_u + alpha phi_s
  bool phi_u_constant = false;
  bool phi_s_constant = false;
  bool psi_constant = false;
  RigidityBranch branch = RigidityBranch::None;

  // Necessary condition for the MME to maximize r-neutralized entropy.
  bool mme_can_be_mmrne() const { return branch != RigidityBranch::None; }
};

RigidityReport rigidity_mme_criterion(const TwoPotentialSystem& sys);

// (p, q) with lambda_u(p, q) = lu and lambda_s(p, q) = ls, or nullopt when
// the iteration leaves the search box or stalls. Throws TargetOutOfRange when
// the target is not strictly inside I_u x I_s.
std::optional<std::pair<double, double>> equality_criterion(const TwoPotentialSystem& sys,
                                                            double lu, double ls,
                                                            double tol = 1e-8);

}  // namespace tneutral
