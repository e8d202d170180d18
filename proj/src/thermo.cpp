#include "tneutral/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tneutral/error.hpp"

namespace tneutral {

LocallyConstantPotential LocallyConstantPotential::symbolwise(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "potential has no values");
  const std::size_t k = values.size();
  return LocallyConstantPotential(1, k, std::move(values));
}

LocallyConstantPotential LocallyConstantPotential::edgewise(const Matrix& values) {
  const std::size_t k = values.size();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "potential has no values");
  std::vector<double> flat(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) flat[i * k + j] = values(i, j);
  }
  return LocallyConstantPotential(2, k, std::move(flat));
}

LocallyConstantPotential LocallyConstantPotential::constant(std::size_t k, double c) {
  return symbolwise(std::vector<double>(k, c));
}

LocallyConstantPotential LocallyConstantPotential::to_edgewise() const {
  if (depth_ == 2) return *this;
  std::vector<double> flat(k_ * k_);
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = 0; j < k_; ++j) flat[i * k_ + j] = values_[i];
  }
  return LocallyConstantPotential(2, k_, std::move(flat));
}

LocallyConstantPotential LocallyConstantPotential::combine(double a,
                                                           const LocallyConstantPotential& lhs,
                                                           double b,
                                                           const LocallyConstantPotential& rhs) {
  if (lhs.k_ != rhs.k_) {
    throw Error(ErrorKind::InvalidArgument, "potentials are defined on different alphabets");
  }
  if (lhs.depth_ == rhs.depth_) {
    std::vector<double> out(lhs.values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = a * lhs.values_[i] + b * rhs.values_[i];
    }
    return LocallyConstantPotential(lhs.depth_, lhs.k_, std::move(out));
  }
  return combine(a, lhs.to_edgewise(), b, rhs.to_edgewise());
}

LocallyConstantPotential LocallyConstantPotential::plus(double c) const {
  auto out = *this;
  for (auto& v : out.values_) v += c;
  return out;
}

Matrix transfer_matrix(const Sft& sft, const LocallyConstantPotential& phi) {
  if (!sft.primitive()) {
    throw Error(ErrorKind::NotPrimitive, "transfer matrix requires a primitive shift");
  }
  if (phi.k() != sft.k()) {
    throw Error(ErrorKind::InvalidArgument, "potential alphabet does not match the shift");
  }
  const std::size_t k = sft.k();
  Matrix l(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) {
        l(i, j) = std::exp(phi.value(i, j));
      }
    }
  }
  return l;
}

namespace {

// Normalized power iteration; returns (vector summing to 1, last step change).
struct PowerRun {
  std::vector<double> vec;
  double residual = 0.0;
  std::int64_t iterations = 0;
};

template <class Apply>
PowerRun power_iterate(std::size_t k, Apply apply, const PressureOptions& opts) {
  const double tol =
      std::max(opts.tol, 16.0 * static_cast<double>(k) * std::numeric_limits<double>::epsilon());
  PowerRun run;
  run.vec.assign(k, 1.0 / static_cast<double>(k));
  for (std::int64_t it = 1; it <= opts.max_iters; ++it) {
    auto next = apply(run.vec);
    const double sum = std::accumulate(next.begin(), next.end(), 0.0);
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      throw Error(ErrorKind::PositivityViolated, "power iteration collapsed to zero");
    }
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      next[i] /= sum;
      change += std::abs(next[i] - run.vec[i]);
    }
    run.vec = std::move(next);
    run.residual = change;
    run.iterations = it;
    if (change <= tol) return run;
  }
  throw Error(ErrorKind::NoConvergence, "power iteration did not converge after " +
                                            std::to_string(opts.max_iters) + " iterations");
}

}  // namespace

PressureResult pressure(const Matrix& transfer, const PressureOptions& opts) {
  const std::size_t k = transfer.size();
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "empty transfer matrix");
  const double scale = transfer.max_entry();
  if (!(scale > 0.0)) throw Error(ErrorKind::PositivityViolated, "transfer matrix is zero");
  Matrix m = transfer;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (m(i, j) < 0.0) throw Error(ErrorKind::InvalidArgument, "transfer matrix is negative");
      m(i, j) /= scale;
    }
  }

  auto right = power_iterate(k, [&](const std::vector<double>& v) { return m.apply(v); }, opts);
  auto left =
      power_iterate(k, [&](const std::vector<double>& v) { return m.apply_transpose(v); }, opts);

  const auto mv = m.apply(right.vec);
  const double rho = std::accumulate(mv.begin(), mv.end(), 0.0);

  PressureResult out;
  out.pressure = std::log(scale) + std::log(rho);
  out.iterations = std::max(right.iterations, left.iterations);
  out.residual = std::max(right.residual, left.residual);
  out.right_vec = std::move(right.vec);
  double dot = 0.0;
  for (std::size_t i = 0; i < k; ++i) dot += left.vec[i] * out.right_vec[i];
  out.left_vec = std::move(left.vec);
  for (auto& x : out.left_vec) x /= dot;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(out.right_vec[i] > 0.0) || !(out.left_vec[i] > 0.0)) {
      throw Error(ErrorKind::PositivityViolated, "Perron vector has a non-positive entry");
    }
  }
  return out;
}

MarkovMeasure gibbs_markov(const Matrix& transfer, const PressureResult& result) {
  const std::size_t k = transfer.size();
  const double rho = std::exp(result.pressure);
  const auto& v = result.right_vec;
  const auto& u = result.left_vec;
  Matrix p(k);
  for (std::size_t i = 0; i < k; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      p(i, j) = transfer(i, j) * v[j] / (rho * v[i]);
      row += p(i, j);
    }
    // remove the power-iteration residual from the row sums
    for (std::size_t j = 0; j < k; ++j) p(i, j) /= row;
  }
  std::vector<double> pi(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    pi[i] = u[i] * v[i];
    total += pi[i];
  }
  for (auto& x : pi) x /= total;
  return MarkovMeasure(std::move(p), std::move(pi));
}

namespace {

double max_allowed_value(const Sft& sft, const LocallyConstantPotential& phi) {
  double c = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sft.k(); ++i) {
    for (std::size_t j = 0; j < sft.k(); ++j) {
      if (sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j))) {
        c = std::max(c, phi.value(i, j));
      }
    }
  }
  return c;
}

}  // namespace

PressureResult pressure_of(const Sft& sft, const LocallyConstantPotential& phi,
                           const PressureOptions& opts) {
  const double c = max_allowed_value(sft, phi);
  auto result = pressure(transfer_matrix(sft, phi.plus(-c)), opts);
  result.pressure += c;
  return result;
}

Equilibrium equilibrium_of(const Sft& sft, const LocallyConstantPotential& phi,
                           const PressureOptions& opts) {
  const double c = max_allowed_value(sft, phi);
  const Matrix l = transfer_matrix(sft, phi.plus(-c));
  auto result = pressure(l, opts);
  auto measure = gibbs_markov(l, result);
  result.pressure += c;
  return Equilibrium{std::move(result), std::move(measure)};
}

double markov_entropy(const MarkovMeasure& m) {
  const auto& p = m.transition();
  const auto& pi = m.stationary();
  double h = 0.0;
  for (std::size_t i = 0; i < m.k(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.k(); ++j) {
      const double x = p(i, j);
      if (x > 0.0) row -= x * std::log(x);
    }
    h += pi[i] * row;
  }
  return h;
}

double integrate(const LocallyConstantPotential& phi, const MarkovMeasure& m) {
  if (phi.k() != m.k()) {
    throw Error(ErrorKind::InvalidArgument, "potential alphabet does not match the measure");
  }
  const auto& pi = m.stationary();
  double total = 0.0;
  if (phi.depth() == 1) {
    for (std::size_t i = 0; i < m.k(); ++i) total += pi[i] * phi.value(i, i);
    return total;
  }
  const auto& p = m.transition();
  for (std::size_t i = 0; i < m.k(); ++i) {
    for (std::size_t j = 0; j < m.k(); ++j) {
      if (p(i, j) > 0.0) total += pi[i] * p(i, j) * phi.value(i, j);
    }
  }
  return total;
}

}  // namespace tneutral
