#include "tneutral/kernels.hpp"

#include <omp.h>

#include <exception>
#include <mutex>
#include <optional>

#include "tneutral/error.hpp"
#include "tneutral/verify.hpp"

namespace tneutral {

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Backend backend) {
  if (backend == Backend::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first;
  std::mutex guard;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of seed + index
  std::uint64_t z = seed + index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<EquilibriumPoint> evaluate_grid(const TwoPotentialSystem& sys,
                                            const std::vector<double>& ps,
                                            const std::vector<double>& qs, Backend backend,
                                            const PressureOptions& opts) {
  const std::size_t nq = qs.size();
  std::vector<std::optional<EquilibriumPoint>> slots(ps.size() * nq);
  for_each_index(
      slots.size(),
      [&](std::size_t idx) { slots[idx] = eval_point(sys, ps[idx / nq], qs[idx % nq], opts); },
      backend);
  std::vector<EquilibriumPoint> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

std::vector<double> local_entropy_samples(const MarkovMeasure& m, const ShiftMetric& metric,
                                          double r, std::int64_t n, std::size_t samples,
                                          std::uint64_t seed, Backend backend) {
  const auto window = ball_window(n, r, metric);
  const auto back = static_cast<std::size_t>(window.m);
  const auto forward = static_cast<std::size_t>(window.n + window.m);
  std::vector<double> out(samples);
  for_each_index(
      samples,
      [&](std::size_t i) {
        const auto orbit = sample_two_sided(m, back, forward, split_seed(seed, i));
        out[i] = exact_local_entropy(m, metric, r, orbit, n);
      },
      backend);
  return out;
}

}  // namespace tneutral
