#include "tneutral/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tneutral/error.hpp"
#include "tneutral/thermo.hpp"

namespace tneutral {

double neutralization_factor(double r, const ShiftMetric& metric) {
  return 1.0 - 2.0 * r / metric.log_theta();
}

double exact_local_entropy(const MarkovMeasure& m, const ShiftMetric& metric, double r,
                           const TwoSidedOrbit& orbit, std::int64_t n) {
  const auto window = ball_window(n, r, metric);
  const auto m_pad = static_cast<std::size_t>(window.m);
  const auto len = static_cast<std::size_t>(window.total_len());
  if (orbit.origin < m_pad || orbit.symbols.size() < orbit.origin - m_pad + len) {
    throw Error(ErrorKind::OrbitTooShort,
                "orbit does not cover coordinates -" + std::to_string(window.m) + " .. " +
                    std::to_string(window.n + window.m - 1));
  }
  const std::span<const Symbol> cyl(orbit.symbols.data() + (orbit.origin - m_pad), len);
  return -cylinder_measure(m, cyl).log_value / static_cast<double>(n);
}

LocalEntropyEstimate estimate_neutralized_entropy(const MarkovMeasure& m,
                                                  const ShiftMetric& metric, double r,
                                                  std::int64_t n, std::size_t samples,
                                                  std::uint64_t seed, Backend backend) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  const auto values = local_entropy_samples(m, metric, r, n, samples, seed, backend);
  // Shifted sums: identical samples give exactly their common value and a
  // zero deviation.
  const double pivot = values.front();
  double shift_sum = 0.0;
  for (double v : values) shift_sum += v - pivot;
  const double mean = pivot + shift_sum / static_cast<double>(samples);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);

  LocalEntropyEstimate est;
  est.r = r;
  est.theta = metric.theta();
  est.n = n;
  est.samples = samples;
  est.mean = mean;
  est.stddev = samples > 1 ? std::sqrt(sq / static_cast<double>(samples - 1)) : 0.0;
  est.predicted = neutralization_factor(r, metric) * markov_entropy(m);
  return est;
}

WordCount spanning_count(const Sft& sft, const ShiftMetric& metric, double r, std::int64_t n) {
  return count_words(sft, ball_window(n, r, metric).total_len());
}

double neutralized_top_entropy_estimate(const Sft& sft, const ShiftMetric& metric, double r,
                                        std::int64_t n) {
  return spanning_count(sft, metric, r, n).log_count / static_cast<double>(n);
}

namespace {

constexpr std::size_t kMaxKatokStates = 4'000'000;

}  // namespace

std::uint64_t katok_count(const MarkovMeasure& m, const ShiftMetric& metric, double r,
                          std::int64_t n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "delta must lie in (0, 1)");
  }
  const auto window = ball_window(n, r, metric);
  const auto len = window.total_len();
  if (len > kKatokMaxWindow) {
    throw Error(ErrorKind::WindowTooLarge, "ball window of " + std::to_string(len) +
                                               " symbols exceeds " +
                                               std::to_string(kKatokMaxWindow));
  }
  const std::size_t k = m.k();
  const auto& p = m.transition();
  const auto& pi = m.stationary();

  // Words of equal mass are grouped by (first symbol, transition counts);
  // the DP state also tracks the last symbol.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<int>> edge_id(k, std::vector<int>(k, -1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (p(i, j) > 0.0) {
        edge_id[i][j] = static_cast<int>(edges.size());
        edges.emplace_back(i, j);
      }
    }
  }
  // key: [first, last, counts...]
  using Key = std::vector<std::uint8_t>;
  std::map<Key, std::uint64_t> states;
  for (std::size_t s = 0; s < k; ++s) {
    if (pi[s] <= 0.0) continue;
    Key key(2 + edges.size(), 0);
    key[0] = static_cast<std::uint8_t>(s);
    key[1] = static_cast<std::uint8_t>(s);
    states[key] = 1;
  }
  for (std::int64_t step = 1; step < len; ++step) {
    std::map<Key, std::uint64_t> next;
    for (const auto& [key, count] : states) {
      const std::size_t last = key[1];
      for (std::size_t j = 0; j < k; ++j) {
        const int e = edge_id[last][j];
        if (e < 0) continue;
        Key nk = key;
        nk[1] = static_cast<std::uint8_t>(j);
        ++nk[2 + static_cast<std::size_t>(e)];
        next[nk] += count;
      }
    }
    if (next.size() > kMaxKatokStates) {
      throw Error(ErrorKind::WindowTooLarge, "too many distinct cylinder masses to enumerate");
    }
    states = std::move(next);
  }

  struct Group {
    double log_mass;
    std::uint64_t count;
  };
  std::map<Key, Group> groups;  // merge over last symbol
  for (const auto& [key, count] : states) {
    Key gk(key.begin(), key.end());
    gk[1] = 0;
    double lm = std::log(pi[key[0]]);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (key[2 + e]) lm += key[2 + e] * std::log(p(edges[e].first, edges[e].second));
    }
    auto [it, inserted] = groups.try_emplace(gk, Group{lm, 0});
    it->second.count += count;
  }
  std::vector<Group> sorted;
  sorted.reserve(groups.size());
  for (const auto& [key, g] : groups) sorted.push_back(g);
  std::sort(sorted.begin(), sorted.end(),
            [](const Group& a, const Group& b) { return a.log_mass > b.log_mass; });

  const long double target = 1.0L - static_cast<long double>(delta);
  long double covered = 0.0L;
  std::uint64_t used = 0;
  for (const auto& g : sorted) {
    const long double mass = std::exp(static_cast<long double>(g.log_mass));
    const long double group_mass = mass * static_cast<long double>(g.count);
    if (covered + group_mass < target * (1.0L - 1e-15L)) {
      covered += group_mass;
      used += g.count;
      continue;
    }
    const long double need = (target - covered) / mass;
    auto take = static_cast<std::uint64_t>(std::ceil(need * (1.0L - 1e-12L)));
    take = std::clamp<std::uint64_t>(take, 1, g.count);
    return used + take;
  }
  return used;
}

VariationalGapReport variational_gap(const Sft& sft, const ShiftMetric& metric, double r,
                                     std::int64_t n, const std::vector<MarkovMeasure>& measures,
                                     std::size_t samples, std::uint64_t seed, Backend backend) {
  if (measures.empty()) throw Error(ErrorKind::InvalidArgument, "no measures to compare");
  VariationalGapReport rep;
  rep.top_estimate = neutralized_top_entropy_estimate(sft, metric, r, n);
  rep.best_measure_estimate = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (!measures[i].supported_on(sft)) {
      throw Error(ErrorKind::InvalidArgument,
                  "measure " + std::to_string(i) + " is not supported on the shift");
    }
    const auto est =
        estimate_neutralized_entropy(measures[i], metric, r, n, samples, seed, backend);
    if (est.mean > rep.best_measure_estimate) {
      rep.best_measure_estimate = est.mean;
      rep.best_index = i;
    }
  }
  rep.gap = rep.top_estimate - rep.best_measure_estimate;
  rep.relative_gap = rep.gap / rep.top_estimate;
  return rep;
}

}  // namespace tneutral
