#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tneutral/markov.hpp"

namespace tneutral {

using Symbol = std::uint32_t;

// Two-sided topological Markov shift on {0..k-1}.
class Sft {
 public:
  // Throws NonSquare or EmptyRowOrColumn. The message names the offending row
  // or column.
  static Sft build(const std::vector<std::vector<int>>& adjacency);
  static Sft full_shift(std::size_t k);

  std::size_t k() const noexcept { return k_; }
  bool allowed(Symbol from, Symbol to) const { return adj_[from * k_ + to] != 0; }
  bool primitive() const noexcept { return primitive_; }
  bool admissible(std::span<const Symbol> word) const;

  // Adjacency as a 0/1 real matrix.
  Matrix adjacency() const;

 private:
  Sft(std::size_t k, std::vector<std::uint8_t> adj);

  std::size_t k_;
  std::vector<std::uint8_t> adj_;
  bool primitive_;
};

// d_theta(x, y) = theta^N(x, y) with N the smallest |i| where x_i != y_i.
class ShiftMetric {
 public:
  explicit ShiftMetric(double theta);

  double theta() const noexcept { return theta_; }
  double log_theta() const noexcept { return log_theta_; }

  // Distance between two points that agree outside the coordinates
  // base .. base+size-1 shared by both arguments. Identical inputs give 0.
  double distance(std::span<const Symbol> x, std::span<const Symbol> y,
                  std::int64_t base) const;

 private:
  double theta_;
  double log_theta_;
};

struct Word {
  std::vector<Symbol> symbols;
  std::int64_t base_index = 0;

  // Throws InvalidArgument if a transition is forbidden in `sft`.
  static Word make(const Sft& sft, std::vector<Symbol> symbols, std::int64_t base_index = 0);
};

// Cylinder window realizing the r-neutralized Bowen ball B(x, n, e^{-nr}).
struct BallWindow {
  std::int64_t n = 0;
  std::int64_t m = 0;  // two-sided padding
  std::int64_t total_len() const noexcept { return n + 2 * m; }
};

// m = floor(-r n / log theta). The ball equals the cylinder on coordinates
// -m .. n+m-1.
BallWindow ball_window(std::int64_t n, double r, const ShiftMetric& metric);

struct WordCount {
  std::optional<std::uint64_t> exact;  // set while the count fits in 64 bits
  double log_count = 0.0;
};

// Number of admissible words of length n (sum of entries of A^{n-1}).
WordCount count_words(const Sft& sft, std::int64_t n);

struct CylinderMass {
  double value = 0.0;
  double log_value = 0.0;  // -inf for forbidden words
};

// pi_{w_0} * prod P_{w_i w_{i+1}}, accumulated in log space.
CylinderMass cylinder_measure(const MarkovMeasure& markov, std::span<const Symbol> word);
inline CylinderMass cylinder_measure(const MarkovMeasure& markov, const Word& word) {
  return cylinder_measure(markov, std::span<const Symbol>(word.symbols));
}

// Forward sample: x_0 ~ pi, x_{i+1} ~ P(x_i, .). Deterministic given seed.
std::vector<Symbol> sample_orbit(const MarkovMeasure& markov, std::size_t length,
                                 std::uint64_t seed);

// Coordinates -back .. forward-1 of a stationary two-sided orbit.
// symbols[origin] is coordinate 0; negative coordinates come from the
// time-reversed chain.
struct TwoSidedOrbit {
  std::vector<Symbol> symbols;
  std::size_t origin = 0;
};

TwoSidedOrbit sample_two_sided(const MarkovMeasure& markov, std::size_t back,
                               std::size_t forward, std::uint64_t seed);

}  // namespace tneutral
