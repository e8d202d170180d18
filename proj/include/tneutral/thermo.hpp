#pragma once

#include <cstdint>
#include <vector>

#include "tneutral/markov.hpp"
#include "tneutral/matrix.hpp"
#include "tneutral/sft.hpp"

namespace tneutral {

// Potential depending on x_0 (depth 1) or on the edge x_0 x_1 (depth 2).
class LocallyConstantPotential {
 public:
  static LocallyConstantPotential symbolwise(std::vector<double> values);
  static LocallyConstantPotential edgewise(const Matrix& values);
  static LocallyConstantPotential constant(std::size_t k, double c);

  int depth() const noexcept { return depth_; }
  std::size_t k() const noexcept { return k_; }

  // Value on the edge i -> j (depth 1 ignores j).
  double value(std::size_t i, std::size_t j) const {
    return depth_ == 1 ? values_[i] : values_[i * k_ + j];
  }
  const std::vector<double>& values() const noexcept { return values_; }

  // a * lhs + b * rhs; promoted to depth 2 when depths differ.
  static LocallyConstantPotential combine(double a, const LocallyConstantPotential& lhs,
                                          double b, const LocallyConstantPotential& rhs);
  LocallyConstantPotential plus(double c) const;
  LocallyConstantPotential to_edgewise() const;

 private:
  LocallyConstantPotential(int depth, std::size_t k, std::vector<double> values)
      : depth_(depth), k_(k), values_(std::move(values)) {}

  int depth_;
  std::size_t k_;
  std::vector<double> values_;
};

struct PressureOptions {
  double tol = 1e-13;
  std::int64_t max_iters = 1'000'000;
};

struct PressureResult {
  double pressure = 0.0;          // log of the spectral radius
  std::vector<double> right_vec;  // sums to 1
  std::vector<double> left_vec;   // left . right = 1
  std::int64_t iterations = 0;
  double residual = 0.0;
};

// L_ij = A_ij exp(phi(i, j)). Throws NotPrimitive.
Matrix transfer_matrix(const Sft& sft, const LocallyConstantPotential& phi);

// Log spectral radius by left/right power iteration. Throws NoConvergence or
// PositivityViolated.
PressureResult pressure(const Matrix& transfer, const PressureOptions& opts = {});

// Pressure of phi without overflowing exp(): the potential is shifted by its
// maximum before exponentiation.
PressureResult pressure_of(const Sft& sft, const LocallyConstantPotential& phi,
                           const PressureOptions& opts = {});

// P_ij = L_ij v_j / (rho v_i), pi_i = u_i v_i.
MarkovMeasure gibbs_markov(const Matrix& transfer, const PressureResult& result);

// Equilibrium measure of phi, built on the same shifted matrix as pressure_of.
struct Equilibrium {
  PressureResult pressure;
  MarkovMeasure measure;
};
Equilibrium equilibrium_of(const Sft& sft, const LocallyConstantPotential& phi,
                           const PressureOptions& opts = {});

double markov_entropy(const MarkovMeasure& m);

double integrate(const LocallyConstantPotential& phi, const MarkovMeasure& m);

}  // namespace tneutral
