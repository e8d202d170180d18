#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tneutral/markov.hpp"
#include "tneutral/sft.hpp"
#include "tneutral/surface.hpp"

namespace tneutral {

// Every data-parallel loop in the library exists twice: an OpenMP version and
// a plain serial loop kept as the reference. Both produce bit-identical
// results because each work item is independent and reductions happen
// afterwards in index order.
enum class Backend { Serial, Parallel };

void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n). The first exception thrown by any item is
// rethrown after the loop.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Backend backend = Backend::Parallel);

// Per-item RNG seed.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

// Equilibrium points over ps x qs, row-major in (p index, q index).
std::vector<EquilibriumPoint> evaluate_grid(const TwoPotentialSystem& sys,
                                            const std::vector<double>& ps,
                                            const std::vector<double>& qs,
                                            Backend backend = Backend::Parallel,
                                            const PressureOptions& opts = {});

// -(1/n) log mu(B(x, n, e^{-nr})) for `samples` independent orbits; sample i
// is drawn with split_seed(seed, i).
std::vector<double> local_entropy_samples(const MarkovMeasure& m, const ShiftMetric& metric,
                                          double r, std::int64_t n, std::size_t samples,
                                          std::uint64_t seed,
                                          Backend backend = Backend::Parallel);

}  // namespace tneutral
