#include "tneutral/markov.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "tneutral/error.hpp"
#include "tneutral/sft.hpp"

namespace tneutral {

namespace {

void validate(const Matrix& p, const std::vector<double>& pi) {
  const std::size_t k = p.size();
  if (k == 0 || pi.size() != k) {
    throw Error(ErrorKind::InvalidArgument, "Markov measure: transition/stationary size mismatch");
  }
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(p(i, j) >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    "Markov measure: negative transition in row " + std::to_string(i));
      }
      sum += p(i, j);
    }
    if (std::abs(sum - 1.0) > MarkovMeasure::kRowTolerance) {
      throw Error(ErrorKind::InvalidArgument,
                  "Markov measure: row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
  }
  double total = 0.0;
  for (double x : pi) {
    if (!(x >= 0.0)) throw Error(ErrorKind::InvalidArgument, "Markov measure: negative pi");
    total += x;
  }
  if (std::abs(total - 1.0) > MarkovMeasure::kStationaryTolerance) {
    throw Error(ErrorKind::InvalidArgument, "Markov measure: pi does not sum to 1");
  }
  const auto pip = p.apply_transpose(pi);
  for (std::size_t j = 0; j < k; ++j) {
    if (std::abs(pip[j] - pi[j]) > MarkovMeasure::kStationaryTolerance) {
      throw Error(ErrorKind::InvalidArgument,
                  "Markov measure: pi is not stationary at symbol " + std::to_string(j));
    }
  }
}

}  // namespace

MarkovMeasure::MarkovMeasure(Matrix transition, std::vector<double> stationary)
    : p_(std::move(transition)), pi_(std::move(stationary)) {
  validate(p_, pi_);
}

MarkovMeasure MarkovMeasure::from_transition(Matrix transition) {
  const std::size_t k = transition.size();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "empty transition matrix");
  // Lazy chain (P + I)/2 has the same stationary vector and is aperiodic.
  std::vector<double> pi(k, 1.0 / static_cast<double>(k));
  for (int iter = 0; iter < 1'000'000; ++iter) {
    auto next = transition.apply_transpose(pi);
    double diff = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      next[j] = 0.5 * (next[j] + pi[j]);
      diff += std::abs(next[j] - pi[j]);
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (auto& x : next) x /= total;
    pi = std::move(next);
    if (diff < 1e-14) break;
  }
  return MarkovMeasure(std::move(transition), std::move(pi));
}

MarkovMeasure MarkovMeasure::bernoulli(std::vector<double> probabilities) {
  const std::size_t k = probabilities.size();
  Matrix p(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) p(i, j) = probabilities[j];
  }
  return MarkovMeasure(std::move(p), std::move(probabilities));
}

Matrix MarkovMeasure::reversed_transition() const {
  const std::size_t n = k();
  Matrix rev(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (pi_[i] <= 0.0) {
      for (std::size_t j = 0; j < n; ++j) rev(i, j) = 1.0 / static_cast<double>(n);
      continue;
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      rev(i, j) = pi_[j] * p_(j, i) / pi_[i];
      sum += rev(i, j);
    }
    for (std::size_t j = 0; j < n; ++j) rev(i, j) /= sum;
  }
  return rev;
}

bool MarkovMeasure::supported_on(const Sft& sft) const {
  if (sft.k() != k()) return false;
  for (std::size_t i = 0; i < k(); ++i) {
    for (std::size_t j = 0; j < k(); ++j) {
      if (p_(i, j) > 0.0 && !sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace tneutral
