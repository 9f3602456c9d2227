#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "infodecomp/prob.hpp"

namespace infodecomp {

/// Which side of the true optimum a reported value lies on.
enum class BoundKind { upper, lower, exact };

std::string_view to_string(BoundKind kind);

/// Result of a seeded multi-restart optimization.
struct OptReport {
  double value = 0.0;
  std::variant<JointPMF, Channel> achiever = JointPMF({Alphabet::range(1)}, {1.0});
  std::size_t restarts_run = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  BoundKind bound_kind = BoundKind::upper;
  /// Constraint residual of the achiever (marginal deviation, conditional MI, ...).
  double constraint_violation = 0.0;
  /// "restart 3", "candidate Q=X", "oracle", ... whichever produced `value`.
  std::string achieved_by;
};

struct RestartOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
};

}  // namespace infodecomp
