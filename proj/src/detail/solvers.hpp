#pragma once

// Small numeric toolbox shared by the optimizers: a seeded RNG, row-wise
// softmax with its adjoint, Euclidean projection onto the simplex, L-BFGS for
// unconstrained problems and projected gradient descent for constrained ones.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "infodecomp/prob.hpp"

namespace infodecomp::detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Exp(1) variate; normalized blocks of these are Dirichlet(1, ..., 1).
  double exponential();
  std::vector<double> dirichlet(std::size_t n);
  /// Logits whose softmax is a uniformly random point of the simplex.
  std::vector<double> simplex_logits(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// out[r*cols + c] = softmax(theta[r*cols .. r*cols+cols))[c]
void softmax_rows(std::span<const double> theta, std::size_t cols, std::span<double> out);
/// Given probabilities s = softmax(theta) and dL/ds, accumulates dL/dtheta.
void softmax_rows_backward(std::span<const double> s, std::span<const double> grad_s,
                           std::size_t cols, std::span<double> grad_theta);

/// In-place Euclidean projection of each length-`cols` row onto the probability simplex.
void project_rows_to_simplex(std::span<double> x, std::size_t cols);

/// Labels prefix0, prefix1, ... for auxiliary variables.
Alphabet indexed_alphabet(const std::string& prefix, std::size_t n);

using ValueGrad = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct DescentOptions {
  std::size_t max_iterations = 4000;
  /// Converged when the objective drops by less than f_tol over `window` iterations.
  double f_tol = 1e-9;
  std::size_t window = 50;
  std::size_t memory = 12;
};

struct DescentResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // accepted objective values, starting with f(x0)
};

DescentResult lbfgs_minimize(const ValueGrad& fg, std::vector<double> x0,
                             const DescentOptions& options);

using Projector = std::function<void(std::span<double>)>;

/// Projected gradient with Armijo backtracking along the projection arc; the
/// trace is non-increasing by construction.
DescentResult projected_gradient_minimize(const ValueGrad& fg, const Projector& project,
                                          std::vector<double> x0, const DescentOptions& options);

}  // namespace infodecomp::detail
