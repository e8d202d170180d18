#include "tneutral/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tneutral/error.hpp"
#include "tneutral/search.hpp"

namespace tneutral {

Horseshoe Horseshoe::make(double eta1, double eta2) {
  if (!(eta1 > 0.0 && eta1 < 1.0 && eta2 > 0.0 && eta2 < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "horseshoe rates must lie in (0, 1)");
  }
  if (!(eta1 + eta2 < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "horseshoe rates must satisfy eta1 + eta2 < 1");
  }
  return Horseshoe{eta1, eta2};
}

Horseshoe Horseshoe::non_uniqueness_example() {
  const double eta1 = 0.9703;
  return make(eta1, std::pow(eta1, 117));
}

TwoPotentialSystem induced_system(const Horseshoe& hs) {
  const double l1 = std::log(hs.eta1);
  const double l2 = std::log(hs.eta2);
  return TwoPotentialSystem(Sft::full_shift(2), LocallyConstantPotential::symbolwise({-l1, -l2}),
                            LocallyConstantPotential::symbolwise({l2, l1}));
}

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

struct Curve {
  double l1;
  double l2;
  double entropy_weight;  // 1 for h + r dim, 0 for dim alone
  double r;

  Curve(const Horseshoe& hs, double r_in)
      : l1(std::log(hs.eta1)), l2(std::log(hs.eta2)) {
    if (std::isinf(r_in)) {
      entropy_weight = 0.0;
      r = 1.0;
    } else {
      entropy_weight = 1.0;
      r = r_in;
    }
  }

  double value(double p) const {
    const double h = -xlogx(p) - xlogx(1.0 - p);
    const double lam1 = -p * l1 - (1.0 - p) * l2;
    const double lam2 = p * l2 + (1.0 - p) * l1;
    return entropy_weight * h + r * h * (1.0 / lam1 - 1.0 / lam2);
  }

  // Closed-form derivative in p.
  double derivative(double p) const {
    const double h = -xlogx(p) - xlogx(1.0 - p);
    const double dh = std::log1p(-p) - std::log(p);
    const double lam1 = -p * l1 - (1.0 - p) * l2;
    const double lam2 = p * l2 + (1.0 - p) * l1;
    const double dlam = l2 - l1;  // same for both exponents
    const double d_over1 = (dh * lam1 - h * dlam) / (lam1 * lam1);
    const double d_over2 = (dh * lam2 - h * dlam) / (lam2 * lam2);
    return entropy_weight * dh + r * (d_over1 - d_over2);
  }
};

constexpr double kEdge = 1e-9;

// Grid scan, golden-section refinement, then bisection on the closed-form
// derivative for full double precision.
std::vector<BernoulliMaximizer> curve_maxima(const Curve& curve, int grid_n) {
  if (grid_n < 100) throw Error(ErrorKind::InvalidArgument, "grid_n must be >= 100");
  const auto ps = linspace(kEdge, 1.0 - kEdge, static_cast<std::size_t>(grid_n));
  std::vector<double> vals(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) vals[i] = curve.value(ps[i]);

  std::vector<BernoulliMaximizer> out;
  for (std::size_t idx : grid_local_maxima(vals)) {
    double lo = ps[idx - 1];
    double hi = ps[idx + 1];
    const auto coarse =
        golden_section_max([&](double p) { return curve.value(p); }, lo, hi, 1e-10);
    double p = coarse.x;
    // derivative is + left of the maximum and - right of it
    if (curve.derivative(lo) > 0.0 && curve.derivative(hi) < 0.0) {
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double d = curve.derivative(mid);
        if (d == 0.0) {
          lo = hi = mid;
          break;
        }
        if (d > 0.0) lo = mid; else hi = mid;
      }
      p = 0.5 * (lo + hi);
    }
    out.push_back({p, curve.value(p)});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.p < b.p; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto& a, const auto& b) { return std::abs(a.p - b.p) < 1e-9; }),
            out.end());
  return out;
}

BernoulliMaximizer best_of(const std::vector<BernoulliMaximizer>& maxima) {
  if (maxima.empty()) throw Error(ErrorKind::Degenerate, "no interior maximum found");
  BernoulliMaximizer best = maxima.front();
  for (const auto& m : maxima) {
    if (m.hr > best.hr + 1e-12 * std::max(1.0, std::abs(best.hr))) best = m;
  }
  return best;
}

}  // namespace

BernoulliStats bernoulli_stats(const Horseshoe& hs, double p, double r) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be >= 0");
  const double l1 = std::log(hs.eta1);
  const double l2 = std::log(hs.eta2);
  BernoulliStats s;
  s.p = p;
  s.h = -xlogx(p) - xlogx(1.0 - p) + 0.0;  // avoid printing -0 at the endpoints
  s.lambda1 = -p * l1 - (1.0 - p) * l2;
  s.lambda2 = p * l2 + (1.0 - p) * l1;
  s.dim = s.h * (1.0 / s.lambda1 - 1.0 / s.lambda2);
  s.hr = s.h + r * s.dim;
  return s;
}

HalfDerivatives hr_derivatives_at_half(const Horseshoe& hs, double r) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be >= 0");
  const double l1 = std::log(hs.eta1);
  const double l2 = std::log(hs.eta2);
  const double sum = l1 + l2;
  const double diff = l1 - l2;
  const double k = (sum * sum - 2.0 * std::numbers::ln2 * diff * diff) / (sum * sum * sum);
  return {0.0, -4.0 + 16.0 * r * k};
}

std::vector<BernoulliMaximizer> find_bernoulli_maximizers(const Horseshoe& hs, double r,
                                                          int grid_n) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be >= 0");
  return curve_maxima(Curve(hs, r), grid_n);
}

BernoulliMaximizer best_bernoulli(const Horseshoe& hs, double r, int grid_n) {
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "r must be >= 0");
  return best_of(curve_maxima(Curve(hs, r), grid_n));
}

double mmhd_bernoulli(const Horseshoe& hs, int grid_n) {
  const Curve curve(hs, std::numeric_limits<double>::infinity());
  return best_of(curve_maxima(curve, grid_n)).p;
}

std::optional<double> critical_r(const Horseshoe& hs, double r_max, int scan_n) {
  const auto second = [&](double r) { return hr_derivatives_at_half(hs, r).second; };
  const auto rs = linspace(0.0, r_max, static_cast<std::size_t>(scan_n) + 1);
  for (std::size_t i = 0; i + 1 < rs.size(); ++i) {
    double lo = rs[i];
    double hi = rs[i + 1];
    double slo = second(lo);
    if (slo == 0.0) return lo;
    if ((slo < 0.0) == (second(hi) < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double sm = second(mid);
      if ((sm < 0.0) == (slo < 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  return std::nullopt;
}

}  // namespace tneutral
