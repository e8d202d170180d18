#pragma once

#include <vector>

#include "tneutral/matrix.hpp"

namespace tneutral {

class Sft;

// Stationary Markov measure on a two-sided shift: row-stochastic transitions
// plus the stationary vector. Bernoulli measures are the constant-row case.
class MarkovMeasure {
 public:
  static constexpr double kRowTolerance = 1e-12;
  static constexpr double kStationaryTolerance = 1e-10;

  // Validates stochasticity and stationarity; throws Error(InvalidArgument).
  MarkovMeasure(Matrix transition, std::vector<double> stationary);

  // pi is computed from P (P must be irreducible on its support).
  static MarkovMeasure from_transition(Matrix transition);
  static MarkovMeasure bernoulli(std::vector<double> probabilities);

  std::size_t k() const noexcept { return pi_.size(); }
  const Matrix& transition() const noexcept { return p_; }
  const std::vector<double>& stationary() const noexcept { return pi_; }

  // Time reversal: P*_{ij} = pi_j P_{ji} / pi_i (rows with pi_i = 0 left uniform).
  Matrix reversed_transition() const;

  bool supported_on(const Sft& sft) const;

 private:
  Matrix p_;
  std::vector<double> pi_;
};

}  // namespace tneutral
