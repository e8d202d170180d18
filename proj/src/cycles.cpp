#include "tneutral/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tneutral/error.hpp"

namespace tneutral {

namespace {

// Karp's minimum mean cycle. Walks may start anywhere (a virtual source with
// zero-weight edges to every vertex), so the graph need not be strongly
// connected.
double min_cycle_mean(const Sft& sft, const LocallyConstantPotential& phi, double sign) {
  const std::size_t k = sft.k();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(k + 1, std::vector<double>(k, inf));
  std::fill(d[0].begin(), d[0].end(), 0.0);
  for (std::size_t t = 1; t <= k; ++t) {
    for (std::size_t u = 0; u < k; ++u) {
      if (d[t - 1][u] == inf) continue;
      for (std::size_t v = 0; v < k; ++v) {
        if (!sft.allowed(static_cast<Symbol>(u), static_cast<Symbol>(v))) continue;
        d[t][v] = std::min(d[t][v], d[t - 1][u] + sign * phi.value(u, v));
      }
    }
  }
  double best = inf;
  for (std::size_t v = 0; v < k; ++v) {
    if (d[k][v] == inf) continue;
    double worst = -inf;
    for (std::size_t t = 0; t < k; ++t) {
      if (d[t][v] == inf) continue;
      worst = std::max(worst, (d[k][v] - d[t][v]) / static_cast<double>(k - t));
    }
    best = std::min(best, worst);
  }
  return sign * best;
}

}  // namespace

ExponentInterval cycle_mean_range(const Sft& sft, const LocallyConstantPotential& phi) {
  if (phi.k() != sft.k()) {
    throw Error(ErrorKind::InvalidArgument, "potential alphabet does not match the shift");
  }
  return ExponentInterval{min_cycle_mean(sft, phi, 1.0), min_cycle_mean(sft, phi, -1.0)};
}

bool cohomologous_to_constant(const Sft& sft, const LocallyConstantPotential& phi, double tol) {
  return cycle_mean_range(sft, phi).empty_interior(tol);
}

}  // namespace tneutral
