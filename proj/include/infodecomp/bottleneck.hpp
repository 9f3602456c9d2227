#pragma once

// Conditional information bottleneck: compress Y into T while keeping what X1
// says about Y beyond X2. Minimizes I(Y;T) - beta * I(X1;T|X2) over encoders p(t|y).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "infodecomp/optim.hpp"
#include "infodecomp/prob.hpp"

namespace infodecomp {

struct BottleneckSolution {
  Channel encoder;
  double beta = 0.0;
  double compression = 0.0;  // I(Y;T)
  double relevance = 0.0;    // I(X1;T|X2)
  double objective = 0.0;
  /// Objective after every accepted step of the restart that produced the encoder.
  std::vector<double> trace;
  /// Every restart's trace was non-increasing (1e-12 slack).
  bool traces_monotone = true;
  bool converged = false;
  std::size_t restarts_run = 0;
  std::uint64_t seed = 0;
};

struct BottleneckOptions {
  std::optional<std::size_t> t_card;  // default |Y|
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
};

/// p over (X1, X2, Y). `warm_start`, when given, is tried in addition to the random restarts.
BottleneckSolution cib_optimize(const JointPMF& p, double beta, BottleneckOptions options = {},
                                const Channel* warm_start = nullptr);

/// One solution per beta (ascending), each warm-started from the previous encoder.
std::vector<BottleneckSolution> beta_sweep(const JointPMF& p, const std::vector<double>& betas,
                                           BottleneckOptions options = {});

/// p(x1, x2, y, t) = p(x1, x2, y) p(t|y).
JointPMF cib_joint(const JointPMF& p, const Channel& encoder);

}  // namespace infodecomp
