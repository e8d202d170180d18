#include "tneutral/sft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "tneutral/error.hpp"

namespace tneutral {

namespace {

bool is_primitive(std::size_t k, const std::vector<std::uint8_t>& adj) {
  // Wielandt: A is primitive iff A^((k-1)^2 + 1) > 0. With nonempty rows,
  // positivity persists for larger powers, so repeated squaring suffices.
  const std::size_t bound = (k - 1) * (k - 1) + 1;
  std::vector<std::uint8_t> power = adj;
  std::size_t exponent = 1;
  while (exponent < bound) {
    std::vector<std::uint8_t> sq(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        if (!power[i * k + l]) continue;
        for (std::size_t j = 0; j < k; ++j) sq[i * k + j] |= power[l * k + j];
      }
    }
    power = std::move(sq);
    exponent *= 2;
  }
  return std::all_of(power.begin(), power.end(), [](std::uint8_t x) { return x != 0; });
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Symbol draw(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  Symbol last_positive = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] <= 0.0) continue;
    last_positive = static_cast<Symbol>(j);
    acc += probs[j];
    if (u < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace

Sft::Sft(std::size_t k, std::vector<std::uint8_t> adj)
    : k_(k), adj_(std::move(adj)), primitive_(is_primitive(k_, adj_)) {}

Sft Sft::build(const std::vector<std::vector<int>>& adjacency) {
  const std::size_t k = adjacency.size();
  if (k == 0) throw Error(ErrorKind::NonSquare, "adjacency matrix is empty");
  std::vector<std::uint8_t> adj(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (adjacency[i].size() != k) {
      throw Error(ErrorKind::NonSquare, "adjacency row " + std::to_string(i) + " has " +
                                            std::to_string(adjacency[i].size()) +
                                            " entries, expected " + std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) {
      const int v = adjacency[i][j];
      if (v != 0 && v != 1) {
        throw Error(ErrorKind::InvalidArgument, "adjacency row " + std::to_string(i) +
                                                    " has entry " + std::to_string(v) +
                                                    " (expected 0 or 1)");
      }
      adj[i * k + j] = static_cast<std::uint8_t>(v);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    bool row = false;
    bool col = false;
    for (std::size_t j = 0; j < k; ++j) {
      row = row || adj[i * k + j];
      col = col || adj[j * k + i];
    }
    if (!row) {
      throw Error(ErrorKind::EmptyRowOrColumn,
                  "adjacency row " + std::to_string(i) + " is empty (symbol has no successor)");
    }
    if (!col) {
      throw Error(ErrorKind::EmptyRowOrColumn, "adjacency column " + std::to_string(i) +
                                                   " is empty (symbol has no predecessor)");
    }
  }
  return Sft(k, std::move(adj));
}

Sft Sft::full_shift(std::size_t k) {
  return build(std::vector<std::vector<int>>(k, std::vector<int>(k, 1)));
}

bool Sft::admissible(std::span<const Symbol> word) const {
  for (Symbol s : word) {
    if (s >= k_) return false;
  }
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (!allowed(word[i], word[i + 1])) return false;
  }
  return true;
}

Matrix Sft::adjacency() const {
  Matrix a(k_);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) a(i, j) = adj_[i * k_ + j];
  }
  return a;
}

ShiftMetric::ShiftMetric(double theta) : theta_(theta), log_theta_(std::log(theta)) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "shift metric theta must lie in (0, 1)");
  }
}

double ShiftMetric::distance(std::span<const Symbol> x, std::span<const Symbol> y,
                             std::int64_t base) const {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::InvalidArgument, "distance: windows differ in length");
  }
  std::int64_t nearest = -1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == y[i]) continue;
    const std::int64_t a = std::abs(base + static_cast<std::int64_t>(i));
    if (nearest < 0 || a < nearest) nearest = a;
  }
  if (nearest < 0) return 0.0;
  return std::pow(theta_, static_cast<double>(nearest));
}

Word Word::make(const Sft& sft, std::vector<Symbol> symbols, std::int64_t base_index) {
  if (!sft.admissible(symbols)) {
    throw Error(ErrorKind::InvalidArgument, "word is not admissible for the shift");
  }
  return Word{std::move(symbols), base_index};
}

BallWindow ball_window(std::int64_t n, double r, const ShiftMetric& metric) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "ball_window: n must be >= 1");
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "ball_window: r must be >= 0");
  const double c = -r * static_cast<double>(n) / metric.log_theta();
  // Integer-part convention; a relative nudge keeps exact integers such as
  // 10 / log(e) from rounding down to 9.
  const double m = std::floor(c * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()));
  return BallWindow{n, static_cast<std::int64_t>(m)};
}

WordCount count_words(const Sft& sft, std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "count_words: n must be >= 1");
  const std::size_t k = sft.k();
  // ends[j]: words of the current length ending in j
  std::vector<std::uint64_t> ends(k, 1);
  bool exact = true;
  std::vector<double> scaled(k, 1.0);
  double log_scale = 0.0;
  for (std::int64_t len = 1; len < n; ++len) {
    if (exact) {
      std::vector<std::uint64_t> next(k, 0);
      for (std::size_t i = 0; i < k && exact; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (!sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) continue;
          if (__builtin_add_overflow(next[j], ends[i], &next[j])) {
            exact = false;
            break;
          }
        }
      }
      if (exact) {
        ends = std::move(next);
        continue;
      }
      for (std::size_t j = 0; j < k; ++j) scaled[j] = static_cast<double>(ends[j]);
    }
    std::vector<double> next(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) next[j] += scaled[i];
      }
    }
    double total = 0.0;
    for (double x : next) total += x;
    for (auto& x : next) x /= total;
    log_scale += std::log(total);
    scaled = std::move(next);
  }
  WordCount out;
  if (exact) {
    std::uint64_t total = 0;
    bool fits = true;
    for (auto e : ends) fits = fits && !__builtin_add_overflow(total, e, &total);
    if (fits) {
      out.exact = total;
      out.log_count = std::log(static_cast<double>(total));
      return out;
    }
    long double sum = 0.0L;
    for (auto e : ends) sum += static_cast<long double>(e);
    out.log_count = static_cast<double>(std::log(sum));
    return out;
  }
  double total = 0.0;
  for (double x : scaled) total += x;
  out.log_count = log_scale + std::log(total);
  return out;
}

CylinderMass cylinder_measure(const MarkovMeasure& markov, std::span<const Symbol> word) {
  CylinderMass out;
  if (word.empty()) {
    out.value = 1.0;
    return out;
  }
  const auto& pi = markov.stationary();
  const auto& p = markov.transition();
  // extended accumulator keeps long windows free of summation drift
  long double log_value = std::log(pi[word[0]]);
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    log_value += std::log(p(word[i], word[i + 1]));
  }
  out.log_value = static_cast<double>(log_value);
  out.value = std::exp(out.log_value);
  return out;
}

std::vector<Symbol> sample_orbit(const MarkovMeasure& markov, std::size_t length,
                                 std::uint64_t seed) {
  return sample_two_sided(markov, 0, length, seed).symbols;
}

TwoSidedOrbit sample_two_sided(const MarkovMeasure& markov, std::size_t back,
                               std::size_t forward, std::uint64_t seed) {
  if (forward < 1) throw Error(ErrorKind::InvalidArgument, "orbit length must be >= 1");
  std::mt19937_64 rng(seed);
  const auto& p = markov.transition();
  TwoSidedOrbit orbit;
  orbit.symbols.resize(back + forward);
  orbit.origin = back;
  orbit.symbols[back] = draw(markov.stationary(), rng);
  for (std::size_t i = back + 1; i < back + forward; ++i) {
    orbit.symbols[i] = draw(p.row(orbit.symbols[i - 1]), rng);
  }
  if (back > 0) {
    const Matrix rev = markov.reversed_transition();
    for (std::size_t i = back; i-- > 0;) {
      orbit.symbols[i] = draw(rev.row(orbit.symbols[i + 1]), rng);
    }
  }
  return orbit;
}

}  // namespace tneutral
