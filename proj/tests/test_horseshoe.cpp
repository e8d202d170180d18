#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "bundled.hpp"
#include "tneutral/error.hpp"
#include "tneutral/horseshoe.hpp"

using namespace tneutral;
using namespace tneutral::testing;

namespace {

// Values frozen from an independent 30-digit evaluation of the closed forms.
constexpr double kSecondAtHalfR3 = 0.583183575461144222;
constexpr double kCriticalR = 2.6182673686145336;
constexpr double kArgmaxR3 = 0.0453436224748446227;
constexpr double kMaxR3 = 3.28271986714853638;
constexpr double kHalfR3 = 3.03111061915859701;
constexpr double kArgmaxR1000 = 0.0347798206765265947;
constexpr double kArgmaxDim = 0.0347584970845631218;
constexpr double kMaxDim = 1.03902414271790208;
constexpr double kHalfDim = 0.779321146199550567;
constexpr double kMmeDim_04_02 = 1.09773816300014115;

double curvature_constant(const Horseshoe& hs) {
  const double l1 = std::log(hs.eta1), l2 = std::log(hs.eta2);
  const double s = l1 + l2, d = l1 - l2;
  return (s * s - 2.0 * std::log(2.0) * d * d) / (s * s * s);
}

}  // namespace

TEST_CASE("horseshoe parameters are validated") {
  CHECK_NOTHROW(Horseshoe::make(0.4, 0.2));
  CHECK_THROWS_AS(Horseshoe::make(0.6, 0.5), Error);
  CHECK_THROWS_AS(Horseshoe::make(0.0, 0.5), Error);
  CHECK_THROWS_AS(Horseshoe::make(-0.1, 0.5), Error);
  const auto ex = Horseshoe::non_uniqueness_example();
  CHECK(ex.eta1 == 0.9703);
  CHECK(ex.eta2 == doctest::Approx(std::pow(0.9703, 117.0)).epsilon(1e-15));
}

TEST_CASE("Bernoulli closed forms") {
  const auto hs = Horseshoe::make(0.4, 0.2);
  const auto s = bernoulli_stats(hs, 0.5, 0.0);
  CHECK(s.h == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(s.dim == doctest::Approx(kMmeDim_04_02).epsilon(1e-14));
  CHECK(s.hr == s.h);
  const auto zero = bernoulli_stats(hs, 0.0, 1.0);
  CHECK(zero.h == 0.0);
  CHECK_FALSE(std::signbit(zero.h));
  CHECK(zero.dim == 0.0);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double p = u(rng);
    const auto b = bernoulli_stats(hs, p, 2.0);
    CHECK(b.lambda1 + std::abs(b.lambda2) ==
          doctest::Approx(-(std::log(0.4) + std::log(0.2))).epsilon(1e-14));
    CHECK(b.h == doctest::Approx(bernoulli_entropy(p)).epsilon(1e-14));
    CHECK(b.hr == doctest::Approx(b.h + 2.0 * b.dim).epsilon(1e-14));
  }
}

TEST_CASE("Bernoulli closed forms agree with the transfer-operator path") {
  const auto hs = Horseshoe::make(0.4, 0.2);
  const auto sys = induced_system(hs);
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.7, 0.0}, {-0.4, 1.1}, {1.5, -0.3}}) {
    const auto pt = eval_point(sys, p, q);
    const double w0 = std::pow(0.4, p) * std::pow(0.2, q);
    const double w1 = std::pow(0.2, p) * std::pow(0.4, q);
    const double prob = w0 / (w0 + w1);
    const auto b = bernoulli_stats(hs, prob, 1.0);
    CHECK(pt.measure.stationary()[0] == doctest::Approx(prob).epsilon(1e-12));
    CHECK(pt.h == doctest::Approx(b.h).epsilon(1e-11));
    CHECK(pt.lambda_u == doctest::Approx(b.lambda1).epsilon(1e-11));
    CHECK(pt.lambda_s == doctest::Approx(b.lambda2).epsilon(1e-11));
    CHECK(pt.dim == doctest::Approx(b.dim).epsilon(1e-11));
  }
}

TEST_CASE("derivatives at one half") {
  const auto hs = Horseshoe::non_uniqueness_example();
  const auto d = hr_derivatives_at_half(hs, 3.0);
  CHECK(std::abs(d.first) < 1e-12);
  CHECK(d.second == doctest::Approx(kSecondAtHalfR3).epsilon(1e-10));
  CHECK(hr_derivatives_at_half(hs, 1.0).second < 0.0);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.05, 0.45), ur(0.0, 5.0);
  for (int t = 0; t < 10; ++t) {
    const auto h = Horseshoe::make(u(rng), u(rng));
    const double r = ur(rng);
    const double step = 1e-4;
    auto f = [&](double p) { return bernoulli_stats(h, p, r).hr; };
    const double fd = (f(0.5 + step) - 2.0 * f(0.5) + f(0.5 - step)) / (step * step);
    const double fd1 = (f(0.5 + step) - f(0.5 - step)) / (2.0 * step);
    const auto an = hr_derivatives_at_half(h, r);
    CHECK(an.second == doctest::Approx(fd).epsilon(1e-5));
    CHECK(an.first == doctest::Approx(fd1).epsilon(1e-6).scale(1.0));
    CHECK(an.second == doctest::Approx(-4.0 + 16.0 * r * curvature_constant(h)).epsilon(1e-12));
  }
}

TEST_CASE("two maximizers at r = 3") {
  const auto hs = Horseshoe::non_uniqueness_example();
  const auto maxima = find_bernoulli_maximizers(hs, 3.0);
  REQUIRE(maxima.size() == 2);
  CHECK(maxima[0].p == doctest::Approx(kArgmaxR3).epsilon(1e-10));
  CHECK(std::abs(maxima[0].p + maxima[1].p - 1.0) < 1e-10);
  CHECK(maxima[0].hr == doctest::Approx(kMaxR3).epsilon(1e-12));
  CHECK(std::abs(maxima[0].hr - maxima[1].hr) < 1e-12);
  CHECK(bernoulli_stats(hs, 0.5, 3.0).hr == doctest::Approx(kHalfR3).epsilon(1e-13));
  CHECK(maxima[0].hr > bernoulli_stats(hs, 0.5, 3.0).hr);
  CHECK(best_bernoulli(hs, 3.0).p == maxima[0].p);
}

TEST_CASE("unique maximizer at small r") {
  const auto hs = Horseshoe::non_uniqueness_example();
  const auto maxima = find_bernoulli_maximizers(hs, 1.0);
  REQUIRE(maxima.size() == 1);
  CHECK(maxima[0].p == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("critical r") {
  const auto hs = Horseshoe::non_uniqueness_example();
  const auto rc = critical_r(hs);
  REQUIRE(rc);
  CHECK(*rc == doctest::Approx(kCriticalR).epsilon(1e-9));
  CHECK(*rc == doctest::Approx(1.0 / (4.0 * curvature_constant(hs))).epsilon(1e-9));
  CHECK(hr_derivatives_at_half(hs, *rc - 1e-3).second < 0.0);
  CHECK(hr_derivatives_at_half(hs, *rc + 1e-3).second > 0.0);
  // K < 0 here, so the second derivative stays negative for every r
  CHECK_FALSE(critical_r(Horseshoe::make(0.4, 0.2)).has_value());
}

TEST_CASE("dimension maximizer") {
  const auto hs = Horseshoe::non_uniqueness_example();
  const double pd = mmhd_bernoulli(hs);
  CHECK(pd == doctest::Approx(kArgmaxDim).epsilon(1e-9));
  CHECK(bernoulli_stats(hs, pd, 0.0).dim == doctest::Approx(kMaxDim).epsilon(1e-13));
  CHECK(bernoulli_stats(hs, 0.5, 0.0).dim == doctest::Approx(kHalfDim).epsilon(1e-13));

  // dense grid oracle on (0, 1/2]
  double best = -1.0, arg = 0.0;
  const int n = 1000000;
  for (int i = 1; i <= n; ++i) {
    const double p = 0.5 * i / n;
    const double d = bernoulli_stats(hs, p, 0.0).dim;
    if (d > best) {
      best = d;
      arg = p;
    }
  }
  CHECK(std::abs(pd - arg) < 1e-6);
}

TEST_CASE("trajectory limits") {
  const auto hs = Horseshoe::non_uniqueness_example();
  CHECK(best_bernoulli(hs, 1e-3).p == doctest::Approx(0.5).epsilon(1e-9));
  const double far = best_bernoulli(hs, 1000.0).p;
  CHECK(far == doctest::Approx(kArgmaxR1000).epsilon(1e-9));
  CHECK(std::abs(far - mmhd_bernoulli(hs)) < 1e-4);
  const double near = std::abs(best_bernoulli(hs, 1e-3).p - 0.5);
  CHECK(near <= std::abs(best_bernoulli(hs, 1.0).p - 0.5));
  CHECK(std::abs(best_bernoulli(hs, 100.0).p - kArgmaxDim) <
        std::abs(best_bernoulli(hs, 10.0).p - kArgmaxDim));
}

TEST_CASE("maximizers respect the p <-> 1-p symmetry") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.05, 0.45), ur(0.1, 20.0);
  for (int t = 0; t < 10; ++t) {
    const auto hs = Horseshoe::make(u(rng), u(rng));
    const double r = ur(rng);
    for (const auto& m : find_bernoulli_maximizers(hs, r, 401)) {
      CHECK(bernoulli_stats(hs, 1.0 - m.p, r).hr == doctest::Approx(m.hr).epsilon(1e-12));
    }
  }
}
