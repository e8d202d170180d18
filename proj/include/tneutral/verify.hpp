#pragma once

#include <cstdint>
#include <vector>

#include "tneutral/kernels.hpp"
#include "tneutral/markov.hpp"
#include "tneutral/sft.hpp"

namespace tneutral {

struct LocalEntropyEstimate {
  double r = 0.0;
  double theta = 0.0;
  std::int64_t n = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double predicted = 0.0;  // (1 - 2r / log theta) h_mu
};

// Scaling factor 1 - 2r / log theta.
double neutralization_factor(double r, const ShiftMetric& metric);

// -(1/n) log mu of the cylinder covering coordinates -m .. n+m-1 of the orbit.
// Throws OrbitTooShort.
double exact_local_entropy(const MarkovMeasure& m, const ShiftMetric& metric, double r,
                           const TwoSidedOrbit& orbit, std::int64_t n);

LocalEntropyEstimate estimate_neutralized_entropy(const MarkovMeasure& m,
                                                  const ShiftMetric& metric, double r,
                                                  std::int64_t n, std::size_t samples,
                                                  std::uint64_t seed,
                                                  Backend backend = Backend::Parallel);

// Minimal (n, e^{-nr})-spanning set size: the number of nonempty cylinders on
// the ball window.
WordCount spanning_count(const Sft& sft, const ShiftMetric& metric, double r, std::int64_t n);
double neutralized_top_entropy_estimate(const Sft& sft, const ShiftMetric& metric, double r,
                                        std::int64_t n);

inline constexpr std::int64_t kKatokMaxWindow = 34;

// Fewest ball-window cylinders covering measure >= 1 - delta. Throws
// WindowTooLarge past kKatokMaxWindow symbols.
std::uint64_t katok_count(const MarkovMeasure& m, const ShiftMetric& metric, double r,
                          std::int64_t n, double delta);

struct VariationalGapReport {
  double top_estimate = 0.0;
  double best_measure_estimate = 0.0;
  std::size_t best_index = 0;
  double gap = 0.0;           // top - best
  double relative_gap = 0.0;  // gap / top
};

VariationalGapReport variational_gap(const Sft& sft, const ShiftMetric& metric, double r,
                                     std::int64_t n, const std::vector<MarkovMeasure>& measures,
                                     std::size_t samples, std::uint64_t seed,
                                     Backend backend = Backend::Parallel);

}  // namespace tneutral
