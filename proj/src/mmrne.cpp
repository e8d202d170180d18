#include "tneutral/mmrne.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "tneutral/error.hpp"
#include "tneutral/search.hpp"

namespace tneutral {

double neutralized_objective(const EquilibriumPoint& point, double r) {
  if (std::isinf(r)) return point.dim;
  return point.h + r * point.dim;
}

namespace {

struct Candidate {
  double p = 0.0;
  double q = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Improvements below this are rounding noise; keeps flat directions (exactly
// equal measures) pinned to the point closest to the origin.
double accept_threshold(double value) { return 1e-13 * std::max(1.0, std::abs(value)); }

bool closer_to_origin(const Candidate& a, const Candidate& b) {
  const double ra = a.p * a.p + a.q * a.q;
  const double rb = b.p * b.p + b.q * b.q;
  if (ra != rb) return ra < rb;
  if (a.p != b.p) return a.p < b.p;
  return a.q < b.q;
}

class Objective {
 public:
  Objective(const TwoPotentialSystem& sys, double r, const FamilySearchOptions& opts)
      : sys_(sys), r_(r), opts_(opts) {}

  double operator()(double p, double q) const {
    p = std::clamp(p, -opts_.box, opts_.box);
    q = std::clamp(q, -opts_.box, opts_.box);
    return neutralized_objective(eval_point(sys_, p, q, opts_.pressure), r_);
  }

 private:
  const TwoPotentialSystem& sys_;
  double r_;
  const FamilySearchOptions& opts_;
};

void nelder_mead_polish(const Objective& f, Candidate& best, double size, double box) {
  struct Vertex {
    double p, q, v;
  };
  auto eval = [&](double p, double q) {
    p = std::clamp(p, -box, box);
    q = std::clamp(q, -box, box);
    return Vertex{p, q, f(p, q)};
  };
  std::array<Vertex, 3> s = {Vertex{best.p, best.q, best.value}, eval(best.p + size, best.q),
                             eval(best.p, best.q + size)};
  for (int it = 0; it < 200; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
    if (std::abs(s[0].p - s[2].p) + std::abs(s[0].q - s[2].q) < 1e-10) break;
    const double cp = 0.5 * (s[0].p + s[1].p);
    const double cq = 0.5 * (s[0].q + s[1].q);
    const Vertex refl = eval(2.0 * cp - s[2].p, 2.0 * cq - s[2].q);
    if (refl.v > s[0].v) {
      const Vertex exp = eval(3.0 * cp - 2.0 * s[2].p, 3.0 * cq - 2.0 * s[2].q);
      s[2] = exp.v > refl.v ? exp : refl;
    } else if (refl.v > s[1].v) {
      s[2] = refl;
    } else {
      const Vertex con = eval(0.5 * (cp + s[2].p), 0.5 * (cq + s[2].q));
      if (con.v > s[2].v) {
        s[2] = con;
      } else {
        s[1] = eval(0.5 * (s[0].p + s[1].p), 0.5 * (s[0].q + s[1].q));
        s[2] = eval(0.5 * (s[0].p + s[2].p), 0.5 * (s[0].q + s[2].q));
      }
    }
  }
  const auto top = *std::max_element(s.begin(), s.end(),
                                     [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
  if (top.v > best.value + accept_threshold(best.value)) best = {top.p, top.q, top.v};
}

}  // namespace

RSweepRecord maximize_over_family(const TwoPotentialSystem& sys, double r,
                                  const FamilySearchOptions& opts, Backend backend) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be >= 0");
  if (opts.grid_n < 3) throw Error(ErrorKind::InvalidArgument, "family grid needs >= 3 points");
  const auto axis = linspace(-opts.box, opts.box, static_cast<std::size_t>(opts.grid_n));
  const double cell = axis[1] - axis[0];
  const auto grid = evaluate_grid(sys, axis, axis, backend, opts.pressure);

  Candidate best;
  for (const auto& pt : grid) {
    const Candidate c{pt.p, pt.q, neutralized_objective(pt, r)};
    if (c.value > best.value) best = c;
  }
  // among near-ties prefer the point closest to the origin
  const double tie = accept_threshold(best.value);
  Candidate chosen = best;
  for (const auto& pt : grid) {
    const Candidate c{pt.p, pt.q, neutralized_objective(pt, r)};
    if (c.value >= best.value - tie && closer_to_origin(c, chosen)) chosen = c;
  }
  best = chosen;

  const Objective f(sys, r, opts);
  for (int round = 0; round < opts.rounds; ++round) {
    const double half = cell / static_cast<double>(1 << round);
    {
      const auto m = golden_section_max([&](double p) { return f(p, best.q); },
                                        std::max(-opts.box, best.p - half),
                                        std::min(opts.box, best.p + half), opts.param_tol);
      if (m.value > best.value + accept_threshold(best.value)) best = {m.x, best.q, m.value};
    }
    {
      const auto m = golden_section_max([&](double q) { return f(best.p, q); },
                                        std::max(-opts.box, best.q - half),
                                        std::min(opts.box, best.q + half), opts.param_tol);
      if (m.value > best.value + accept_threshold(best.value)) best = {best.p, m.x, m.value};
    }
  }
  nelder_mead_polish(f, best, cell / 8.0, opts.box);

  const auto pt = eval_point(sys, best.p, best.q, opts.pressure);
  RSweepRecord rec;
  rec.r = r;
  rec.p = best.p;
  rec.q = best.q;
  rec.h = pt.h;
  rec.dim = pt.dim;
  rec.hr_max = neutralized_objective(pt, r);
  const double edge = opts.box - 1e-6;
  rec.edge_hit = std::abs(best.p) >= edge || std::abs(best.q) >= edge;
  return rec;
}

std::vector<RSweepRecord> sweep(const TwoPotentialSystem& sys, std::vector<double> r_values,
                                const FamilySearchOptions& opts, Backend backend) {
  if (r_values.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one r");
  std::sort(r_values.begin(), r_values.end());
  std::vector<RSweepRecord> out(r_values.size());
  for_each_index(
      r_values.size(),
      [&](std::size_t i) {
        out[i] = maximize_over_family(sys, r_values[i], opts, Backend::Serial);
      },
      backend);
  return out;
}

std::vector<BernoulliSweepRecord> sweep_bernoulli(const Horseshoe& hs,
                                                  std::vector<double> r_values, int grid_n,
                                                  Backend backend) {
  if (r_values.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one r");
  std::sort(r_values.begin(), r_values.end());
  std::vector<BernoulliSweepRecord> out(r_values.size());
  for_each_index(
      r_values.size(),
      [&](std::size_t i) {
        const double r = r_values[i];
        const auto maxima = find_bernoulli_maximizers(hs, r, grid_n);
        const auto best = best_bernoulli(hs, r, grid_n);
        BernoulliSweepRecord rec;
        rec.r = r;
        rec.p = best.p;
        rec.hr_max = best.hr;
        const double tie = 1e-12 * std::max(1.0, std::abs(best.hr));
        rec.maximizer_count = static_cast<std::size_t>(std::count_if(
            maxima.begin(), maxima.end(),
            [&](const BernoulliMaximizer& m) { return m.hr >= best.hr - tie; }));
        const auto stats = bernoulli_stats(hs, best.p, std::isinf(r) ? 0.0 : r);
        rec.h = stats.h;
        rec.dim = stats.dim;
        out[i] = rec;
      },
      backend);
  return out;
}

RigidityReport rigidity_mme_criterion(const TwoPotentialSystem& sys) {
  const auto mme = eval_point(sys, 0.0, 0.0);
  RigidityReport rep;
  rep.alpha = (mme.lambda_u * mme.lambda_u) / (mme.lambda_s * mme.lambda_s);
  const auto psi = LocallyConstantPotential::combine(-1.0, sys.phi_u(), rep.alpha, sys.phi_s());
  rep.u_range = exponent_range(sys, Direction::Unstable);
  rep.s_range = exponent_range(sys, Direction::Stable);
  rep.psi_range = cycle_mean_range(sys.sft(), psi);
  rep.phi_u_constant = rep.u_range.empty_interior();
  rep.phi_s_constant = rep.s_range.empty_interior();
  rep.psi_constant = rep.psi_range.empty_interior();
  if (rep.phi_u_constant && rep.phi_s_constant) {
    rep.branch = RigidityBranch::BothConstant;
  } else if (!rep.phi_u_constant && !rep.phi_s_constant && rep.psi_constant) {
    rep.branch = RigidityBranch::Combination;
  }
  return rep;
}

std::optional<std::pair<double, double>> equality_criterion(const TwoPotentialSystem& sys,
                                                            double lu, double ls, double tol) {
  const auto iu = exponent_range(sys, Direction::Unstable);
  const auto is = exponent_range(sys, Direction::Stable);
  if (!iu.contains_strictly(lu) || !is.contains_strictly(ls)) {
    throw Error(ErrorKind::TargetOutOfRange, "target exponents not strictly inside I_u x I_s");
  }
  auto residual = [&](double p, double q) {
    const auto pt = eval_point(sys, p, q);
    return std::array<double, 2>{pt.lambda_u - lu, pt.lambda_s - ls};
  };
  auto norm = [](const std::array<double, 2>& r) {
    return std::max(std::abs(r[0]), std::abs(r[1]));
  };

  double p = 0.0;
  double q = 0.0;
  try {
    for (int it = 0; it < 60; ++it) {
      p = gamma_u(sys, q, lu);
      q = gamma_s(sys, p, ls);
      if (norm(residual(p, q)) < tol) return std::make_pair(p, q);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TargetOutOfRange && e.kind() != ErrorKind::NoConvergence) throw;
    return std::nullopt;
  }

  // Slow alternating convergence (strongly coupled exponents): finish with
  // Newton steps on a finite-difference Jacobian.
  constexpr double step = 1e-5;
  for (int it = 0; it < 50; ++it) {
    const auto f = residual(p, q);
    if (norm(f) < tol) return std::make_pair(p, q);
    const auto fp1 = residual(p + step, q);
    const auto fp0 = residual(p - step, q);
    const auto fq1 = residual(p, q + step);
    const auto fq0 = residual(p, q - step);
    const double a = (fp1[0] - fp0[0]) / (2 * step);
    const double b = (fq1[0] - fq0[0]) / (2 * step);
    const double c = (fp1[1] - fp0[1]) / (2 * step);
    const double d = (fq1[1] - fq0[1]) / (2 * step);
    const double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    p -= (d * f[0] - b * f[1]) / det;
    q -= (-c * f[0] + a * f[1]) / det;
    if (std::abs(p) > 1e6 || std::abs(q) > 1e6) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace tneutral
