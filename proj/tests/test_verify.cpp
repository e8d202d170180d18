#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "bundled.hpp"
#include "tneutral/error.hpp"
#include "tneutral/kernels.hpp"
#include "tneutral/verify.hpp"

using namespace tneutral;
using namespace tneutral::testing;

namespace {

const ShiftMetric kE(std::exp(-1.0));
const ShiftMetric kHalf(0.5);
const double kLog2 = std::numbers::ln2;

// Katok count by listing every admissible window and sorting the masses.
std::uint64_t katok_brute(const Sft& sft, const MarkovMeasure& m, std::size_t len, double delta) {
  std::vector<double> masses;
  std::vector<Symbol> w(len, 0);
  while (true) {
    if (sft.admissible(w)) masses.push_back(cylinder_measure(m, w).value);
    std::size_t i = 0;
    while (i < len && ++w[i] == sft.k()) w[i++] = 0;
    if (i == len) break;
  }
  std::sort(masses.begin(), masses.end(), std::greater<>());
  long double acc = 0.0L;
  std::uint64_t count = 0;
  for (double x : masses) {
    acc += x;
    ++count;
    if (acc >= 1.0L - delta) break;
  }
  return count;
}

}  // namespace

TEST_CASE("exact local entropy examples") {
  const auto uniform = MarkovMeasure::bernoulli({0.5, 0.5});
  const auto orbit = sample_two_sided(uniform, 10, 20, 4);
  CHECK(exact_local_entropy(uniform, kE, 1.0, orbit, 10) == doctest::Approx(3.0 * kLog2).epsilon(1e-14));

  const auto dirac = MarkovMeasure::bernoulli({1.0, 0.0});
  const auto zeros = sample_two_sided(dirac, 30, 60, 4);
  for (std::int64_t n : {1, 5, 20}) {
    for (double r : {0.0, 0.5, 1.0}) CHECK(exact_local_entropy(dirac, kE, r, zeros, n) == 0.0);
  }

  // r small enough for no padding: forward cylinder value
  const auto m = MarkovMeasure::bernoulli({0.3, 0.7});
  const auto o = sample_two_sided(m, 0, 10, 9);
  const std::vector<Symbol> fwd(o.symbols.begin() + static_cast<long>(o.origin),
                                o.symbols.begin() + static_cast<long>(o.origin) + 10);
  CHECK(exact_local_entropy(m, kHalf, 0.01, o, 10) ==
        doctest::Approx(-cylinder_measure(m, fwd).log_value / 10.0).epsilon(1e-14));

  try {
    exact_local_entropy(uniform, kE, 1.0, orbit, 20);
    FAIL("expected OrbitTooShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OrbitTooShort);
  }
}

TEST_CASE("local entropy scales with the window for uniform Bernoulli") {
  const auto uniform = MarkovMeasure::bernoulli({0.5, 0.5});
  for (std::int64_t n : {3, 10, 17}) {
    for (double r : {0.2, 1.0, 2.5}) {
      const auto w = ball_window(n, r, kHalf);
      const auto orbit = sample_two_sided(uniform, static_cast<std::size_t>(w.m),
                                          static_cast<std::size_t>(n + w.m), 1);
      CHECK(exact_local_entropy(uniform, kHalf, r, orbit, n) * static_cast<double>(n) ==
            doctest::Approx(kLog2 * static_cast<double>(w.total_len())).epsilon(1e-13));
    }
  }
}

TEST_CASE("neutralized entropy estimates") {
  const auto uniform = MarkovMeasure::bernoulli({0.5, 0.5});
  const auto u = estimate_neutralized_entropy(uniform, kE, 1.0, 200, 100, 1);
  CHECK(u.mean == doctest::Approx(3.0 * kLog2).epsilon(1e-14));
  CHECK(u.stddev == 0.0);
  CHECK(u.predicted == doctest::Approx(3.0 * kLog2).epsilon(1e-14));
  CHECK(u.samples == 100);

  const auto par = parry(golden_mean());
  const double hp = markov_entropy(par);
  const auto pe = estimate_neutralized_entropy(par, kE, 1.0, 400, 200, 3);
  CHECK(std::abs(pe.mean - 3.0 * hp) / (3.0 * hp) < 0.02);

  const auto skew = MarkovMeasure::bernoulli({0.9, 0.1});
  const auto se = estimate_neutralized_entropy(skew, kHalf, 0.5, 500, 500, 5);
  CHECK(se.predicted == doctest::Approx(neutralization_factor(0.5, kHalf) * bernoulli_entropy(0.9)));
  CHECK(std::abs(se.mean - se.predicted) < 3.0 * se.stddev / std::sqrt(500.0));
}

TEST_CASE("estimates depend on the metric by the predicted ratio") {
  const auto m = MarkovMeasure::bernoulli({0.7, 0.3});
  const double r = 0.5;
  const auto a = estimate_neutralized_entropy(m, kHalf, r, 300, 200, 11);
  const auto b = estimate_neutralized_entropy(m, kE, r, 300, 200, 11);
  const double ratio = neutralization_factor(r, kHalf) / neutralization_factor(r, kE);
  CHECK(std::abs(a.mean / b.mean - ratio) / ratio < 0.02);
}

TEST_CASE("estimates are nondecreasing in r") {
  const auto par = parry(golden_mean());
  double prev = 0.0;
  for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const auto e = estimate_neutralized_entropy(par, kE, r, 100, 50, 17);
    CHECK(e.mean >= prev - 1e-12);
    prev = e.mean;
  }
}

TEST_CASE("spanning counts") {
  const auto c = spanning_count(full2(), kE, 1.0, 10);
  REQUIRE(c.exact);
  CHECK(*c.exact == (std::uint64_t{1} << 30));
  CHECK(neutralized_top_entropy_estimate(full2(), kE, 1.0, 10) ==
        doctest::Approx(3.0 * kLog2).epsilon(1e-14));

  const double target = 3.0 * std::log(kGolden);
  double prev_err = 1.0;
  for (std::int64_t n : {10, 20, 40, 80}) {
    const double err = std::abs(neutralized_top_entropy_estimate(golden_mean(), kE, 1.0, n) - target) / target;
    CHECK(err < prev_err);
    if (n == 20) CHECK(err < 0.05);
    prev_err = err;
  }
  CHECK(neutralized_top_entropy_estimate(golden_mean(), kE, 0.0, 30) ==
        doctest::Approx(count_words(golden_mean(), 30).log_count / 30.0));
}

TEST_CASE("Katok counts") {
  const auto uniform = MarkovMeasure::bernoulli({0.5, 0.5});
  CHECK(katok_count(uniform, kE, 1.0, 8, 0.5) == (std::uint64_t{1} << 23));
  CHECK(katok_count(uniform, kE, 1.0, 8, 0.999999) == 17);  // ceil(1e-6 * 2^24)
  CHECK(katok_count(uniform, kE, 1.0, 8, 1.0 - 1e-9) == 1);

  // Frozen from exact rational arithmetic over the binomial mass classes.
  const auto skew = MarkovMeasure::bernoulli({0.99, 0.01});
  CHECK(katok_count(skew, kE, 1.0, 8, 0.5) == 1);
  CHECK(katok_count(skew, kE, 1.0, 8, 0.1) == 16);
  CHECK(katok_count(skew, kE, 1.0, 4, 0.01) == 13);
  const auto mild = MarkovMeasure::bernoulli({0.9, 0.1});
  CHECK(katok_count(mild, kE, 1.0, 8, 0.5) == 236);
  CHECK(katok_count(mild, kE, 1.0, 8, 0.1) == 11724);
  CHECK(katok_count(skew, kE, 1.0, 8, 0.5) < katok_count(uniform, kE, 1.0, 8, 0.5));

  try {
    katok_count(uniform, kE, 1.0, 12, 0.5);
    FAIL("expected WindowTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowTooLarge);
  }
}

TEST_CASE("Katok DP matches enumeration and stays below spanning") {
  std::mt19937_64 rng(44);
  for (const auto& sft : bundled_sfts()) {
    const auto m = random_markov(sft, rng);
    for (std::int64_t n : {2, 3, 4}) {
      const auto w = ball_window(n, 0.5, kHalf);
      if (w.total_len() > (sft.k() == 3 ? 9 : 14)) continue;
      const auto span = *spanning_count(sft, kHalf, 0.5, n).exact;
      for (double delta : {0.01, 0.2, 0.5, 0.9}) {
        const auto dp = katok_count(m, kHalf, 0.5, n, delta);
        CHECK(dp == katok_brute(sft, m, static_cast<std::size_t>(w.total_len()), delta));
        CHECK(dp <= span);
      }
    }
  }
}

TEST_CASE("variational gap") {
  const auto par = parry(golden_mean());
  // beyond n = 20 the remaining gap is dominated by sampling noise
  CHECK(std::abs(variational_gap(golden_mean(), kE, 1.0, 20, {par}, 100, 7).relative_gap) < 0.05);
  CHECK(std::abs(variational_gap(golden_mean(), kE, 1.0, 80, {par}, 100, 7).relative_gap) < 0.01);

  const auto skew = MarkovMeasure::bernoulli({0.9, 0.1});
  const auto rep = variational_gap(full2(), kE, 1.0, 200, {skew}, 200, 7);
  CHECK(rep.gap > 0.0);
  CHECK(rep.gap == doctest::Approx(3.0 * (kLog2 - bernoulli_entropy(0.9))).epsilon(0.03));

  const auto both = variational_gap(full2(), kE, 1.0, 50, {skew, MarkovMeasure::bernoulli({0.5, 0.5})}, 20, 7);
  CHECK(both.best_index == 1);
  CHECK(std::abs(both.gap) < 1e-12);

  const auto zero_r = variational_gap(full2(), kE, 0.0, 50, {MarkovMeasure::bernoulli({0.5, 0.5})}, 20, 7);
  CHECK(std::abs(zero_r.gap) < 1e-12);
}
