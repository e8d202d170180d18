// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "bundled.hpp"
#include "tneutral/commands.hpp"
#include "tneutral/config.hpp"
#include "tneutral/cycles.hpp"
#include "tneutral/horseshoe.hpp"
#include "tneutral/kernels.hpp"
#include "tneutral/mmrne.hpp"
#include "tneutral/search.hpp"
#include "tneutral/verify.hpp"

using namespace tneutral;
using namespace tneutral::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s,
               const std::function<void(Outcome&)>& body) {
  Outcome out;
  out.detail.precision(6);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    out.ok = false;
    out.detail << " [over time limit " << limit_s << " s]";
  }
  if (!out.ok) ++failures;
  std::printf("[%s] %d %s:%s (%.3f s)\n", out.ok ? "PASS" : "FAIL", id, name.c_str(),
              out.detail.str().c_str(), secs);
  std::fflush(stdout);
}

const ShiftMetric kE(std::exp(-1.0));
const ShiftMetric kHalf(0.5);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

RunConfig make_config(const std::string& text) {
  return load_run_config(ConfigFile::parse_string(text, "acceptance"));
}

}  // namespace

int main() {
  criterion(1, "pressure correctness", 1.0, [](Outcome& o) {
    const double p2 = pressure_of(full2(), LocallyConstantPotential::constant(2, 0.0)).pressure;
    const double pg =
        pressure_of(golden_mean(), LocallyConstantPotential::constant(2, 0.0)).pressure;
    const double e2 = std::abs(p2 - std::numbers::ln2);
    const double eg = std::abs(pg - std::log(kGolden));
    const double c2 = std::abs(count_words(full2(), 40).log_count / 40.0 - p2);
    const double cg = std::abs(count_words(golden_mean(), 40).log_count / 40.0 - pg);
    o.detail << " |P-log2|=" << e2 << " |P-log phi|=" << eg << " count gaps " << c2 << ", " << cg;
    o.require(e2 < 1e-12, "full shift pressure");
    o.require(eg < 1e-10, "golden mean pressure");
    o.require(c2 < 2e-2 && cg < 2e-2, "word count cross-check");
  });

  criterion(2, "equilibrium identity", 5.0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (const auto& sft : bundled_sfts()) {
      for (int t = 0; t < 20; ++t) {
        const auto phi = random_potential(sft.k(), rng);
        const auto eq = equilibrium_of(sft, phi);
        worst = std::max(worst, std::abs(markov_entropy(eq.measure) + integrate(phi, eq.measure) -
                                         eq.pressure.pressure));
      }
    }
    o.detail << " max residual " << worst << " over 60 potentials";
    o.require(worst < 1e-9, "residual < 1e-9");
  });

  criterion(3, "derivative identities", 10.0, [](Outcome& o) {
    double worst = 0.0;
    const auto axis = linspace(-1.0, 1.0, 5);
    const auto systems = bundled_systems();
    for (const auto& sys : systems) {
      for (double p : axis) {
        for (double q : axis) {
          const auto r = derivative_check(sys, p, q, 1e-5);
          worst = std::max({worst, r.u, r.s});
        }
      }
    }
    o.detail << " max residual " << worst << " over " << systems.size() << " systems x 25 points";
    o.require(worst < 1e-6, "residual < 1e-6");
  });

  criterion(4, "two maximizers at r = 3", 5.0, [](Outcome& o) {
    const auto hs = Horseshoe::non_uniqueness_example();
    const auto d = hr_derivatives_at_half(hs, 3.0);
    const double step = 1e-4;
    auto f = [&](double p) { return bernoulli_stats(hs, p, 3.0).hr; };
    const double fd = (f(0.5 + step) - 2.0 * f(0.5) + f(0.5 - step)) / (step * step);
    const auto maxima = find_bernoulli_maximizers(hs, 3.0);
    const double half = f(0.5);
    o.detail << " first=" << d.first << " second=" << d.second << " fd=" << fd;
    o.require(std::abs(d.first) < 1e-12, "first derivative zero");
    o.require(d.second > 0.0, "second derivative positive");
    o.require(std::abs(d.second - fd) < 1e-5, "finite difference match");
    o.require(maxima.size() == 2, "exactly two maxima");
    if (maxima.size() == 2) {
      const double sym = std::abs(maxima[0].p + maxima[1].p - 1.0);
      o.detail.precision(12);
      o.detail << " p*=" << maxima[0].p << "," << maxima[1].p << " hr=" << maxima[0].hr
               << " hr(1/2)=" << half;
      o.detail.precision(3);
      o.detail << " symmetry=" << sym;
      o.require(sym < 1e-10, "p* + (1-p*) = 1");
      o.require(maxima[0].hr > half && maxima[1].hr > half, "beats p = 1/2");
    }
    const double second0 = hr_derivatives_at_half(hs, 0.0).second;
    const auto rc = critical_r(hs, 3.0);
    o.detail.precision(10);
    o.detail << " second(r=0)=" << second0 << " critical_r=" << (rc ? *rc : NAN);
    o.require(second0 < 0.0, "second derivative negative at r = 0");
    o.require(rc && *rc > 0.0 && *rc <= 3.0, "sign change bracketed in (0, 3]");
  });

  criterion(5, "limit behaviour", 10.0, [](Outcome& o) {
    const auto hs = Horseshoe::non_uniqueness_example();
    const double small = best_bernoulli(hs, 1e-3).p;
    const double large = best_bernoulli(hs, 1e3).p;
    // independent oracle: dense grid over (0, 1/2] of the dimension alone
    double best = -1.0, p_dim = 0.0;
    const int n = 1000000;
    for (int i = 1; i <= n; ++i) {
      const double p = 0.5 * i / n;
      const double d = bernoulli_stats(hs, p, 0.0).dim;
      if (d > best) {
        best = d;
        p_dim = p;
      }
    }
    o.detail.precision(10);
    o.detail << " p*(1e-3)=" << small << " p*(1e3)=" << large << " p_dim=" << p_dim;
    o.require(std::abs(small - 0.5) < 1e-2, "small r tends to 1/2");
    o.require(std::abs(large - p_dim) < 1e-3, "large r tends to p_dim");
  });

  criterion(6, "local neutralized entropy", 30.0, [](Outcome& o) {
    const auto uniform = MarkovMeasure::bernoulli({0.5, 0.5});
    const auto u = estimate_neutralized_entropy(uniform, kE, 1.0, 200, 100, 1);
    const double exact = 3.0 * std::numbers::ln2;
    o.detail << " uniform mean-3log2=" << u.mean - exact << " stddev=" << u.stddev;
    o.require(u.mean == exact, "uniform exact");
    o.require(u.stddev == 0.0, "uniform zero variance");

    const auto par = parry(golden_mean());
    const auto pe = estimate_neutralized_entropy(par, kE, 1.0, 400, 200, 3);
    const double target = 3.0 * markov_entropy(par);
    o.detail << " parry rel err=" << rel(pe.mean, target);
    o.require(rel(pe.mean, target) < 0.02, "Parry within 2%");

    const auto m = MarkovMeasure::bernoulli({0.7, 0.3});
    const auto a = estimate_neutralized_entropy(m, kHalf, 0.5, 300, 200, 11);
    const auto b = estimate_neutralized_entropy(m, kE, 0.5, 300, 200, 11);
    const double ratio = neutralization_factor(0.5, kHalf) / neutralization_factor(0.5, kE);
    o.detail << " metric ratio err=" << rel(a.mean / b.mean, ratio);
    o.require(rel(a.mean / b.mean, ratio) < 0.02, "metric ratio within 2%");
  });

  criterion(7, "neutralized topological entropy", 10.0, [](Outcome& o) {
    const double target = 3.0 * std::log(kGolden);
    double prev = 1.0;
    bool decreasing = true;
    double err20 = 0.0;
    for (std::int64_t n : {10, 20, 40, 80, 160}) {
      const double err = rel(neutralized_top_entropy_estimate(golden_mean(), kE, 1.0, n), target);
      if (n == 20) err20 = err;
      decreasing = decreasing && err < prev;
      prev = err;
    }
    const auto gap = variational_gap(golden_mean(), kE, 1.0, 20, {parry(golden_mean())}, 200, 7);
    o.detail << " rel err(n=20)=" << err20 << " rel err(n=160)=" << prev
             << " variational gap(n=20)=" << gap.relative_gap;
    o.require(err20 < 0.05, "spanning estimate within 5% at n = 20");
    o.require(decreasing, "error decreasing in n");
    o.require(std::abs(gap.relative_gap) < 0.05, "variational gap below 5%");
  });

  criterion(8, "rigidity criterion", 1.0, [](Outcome& o) {
    const auto equal = rigidity_mme_criterion(induced_system(Horseshoe::make(0.3, 0.3)));
    o.require(equal.branch == RigidityBranch::BothConstant, "equal etas give branch (1)");

    const auto unequal = rigidity_mme_criterion(induced_system(Horseshoe::make(0.4, 0.2)));
    o.detail << " unequal: u width=" << unequal.u_range.width()
             << " s width=" << unequal.s_range.width() << " alpha=" << unequal.alpha
             << " psi cycle means [" << unequal.psi_range.min << ", " << unequal.psi_range.max
             << "]";
    o.require(!unequal.phi_u_constant && !unequal.phi_s_constant,
              "unequal etas are not cohomologous to constants");

    // constants plus coboundaries on a 3-symbol SFT
    const auto sft = three_symbol();
    const std::vector<double> g{0.3, -0.7, 1.1}, h{-0.2, 0.5, 0.9};
    Matrix mu(3), ms(3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        mu(i, j) = 1.2 + g[j] - g[i];
        ms(i, j) = -0.8 + h[j] - h[i];
      }
    }
    const auto cob = rigidity_mme_criterion(TwoPotentialSystem(
        sft, LocallyConstantPotential::edgewise(mu), LocallyConstantPotential::edgewise(ms)));
    o.detail << " coboundary: u width=" << cob.u_range.width()
             << " s width=" << cob.s_range.width();
    o.require(cob.branch == RigidityBranch::BothConstant, "coboundary-perturbed gives branch (1)");
  });

  criterion(9, "determinism", 60.0, [](Outcome& o) {
    const auto horseshoe = make_config("r = 0.001, 1, 3, 1000\nhorseshoe.curve_points = 201\n");
    const auto verify = make_config(
        "system.kind = sft\nsystem.adjacency = 1 1; 1 0\nmetric.log_theta = -1\n"
        "r = 0.5, 1\nverify.n = 400\nverify.samples = 200\nseed = 3\n");
    const auto h1 = run_command("horseshoe", horseshoe).csv;
    const auto v1 = run_command("verify", verify).csv;
    bool same = true;
    const int saved = thread_count();
    for (int threads : {1, 4}) {
      set_thread_count(threads);
      same = same && run_command("horseshoe", horseshoe).csv == h1;
      same = same && run_command("verify", verify).csv == v1;
    }
    set_thread_count(saved);
    o.detail << " csv bytes " << h1.size() << " + " << v1.size();
    o.require(same, "byte-identical CSVs");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
