#pragma once

// Synergy through secret-key style quantities: the intrinsic conditional
// information, the union information over the pairwise-marginal polytope and
// the lockability bound of conditional mutual information.

#include <cstddef>
#include <optional>

#include "infodecomp/optim.hpp"
#include "infodecomp/prob.hpp"

namespace infodecomp {

/// min over channels p(y'|y) of I(X1;X2|Y') for p over (X1, X2, Y). The default
/// |Y'| is |Y|. Achiever: the channel.
OptReport intrinsic_information(const JointPMF& p, std::optional<std::size_t> yprime_card = {},
                                RestartOptions options = {});

inline constexpr double kPolytopeTol = 1e-6;

struct MarginalPolytopePoint {
  JointPMF joint;  // over (X1, X2, Y')
  double deviation;
};

/// Largest deviation of the (X1,Y') and (X2,Y') marginals of `candidate` from
/// the (X1,Y) and (X2,Y) marginals of `p`.
double polytope_deviation(const JointPMF& p, const JointPMF& candidate);

/// The feasible point with Y' as conditionally independent as possible:
/// p(x1,y) p(x2,y) / p(y).
JointPMF conditionally_independent_point(const JointPMF& p);

/// min I(X1X2;Y') over joints whose (Xi,Y') marginals equal the (Xi,Y) marginals
/// of p. Achiever: the minimizing joint over (X1, X2, Y').
OptReport union_information(const JointPMF& p, RestartOptions options = {16, 0});

struct SynergyReport {
  double via_intrinsic = 0.0;
  double via_union = 0.0;
  double gap = 0.0;
  /// via_intrinsic fell in [-1e-6, 0) and was set to 0.
  bool clamped = false;
  OptReport intrinsic;
  OptReport union_info;
};

/// Whole-minus-union synergy by both routes: I(X1;X2|Y) - I(X1;X2↓Y) and
/// I(X1X2;Y) - union information.
SynergyReport synergy_gk(const JointPMF& p, RestartOptions options = {});

struct LockabilityReport {
  double cmi_with = 0.0;     // I(X1;X2|Y Y1)
  double cmi_without = 0.0;  // I(X1;X2|Y)
  double cmi_difference = 0.0;
  double bound = 0.0;  // H(Y1)
  bool holds = true;
  /// (I(X1;X2|YY1) - I(X1;X2↓YY1)) - (I(X1;X2|Y) - I(X1;X2↓Y)); no bound is claimed.
  std::optional<double> synergy_difference;
};

/// `p_ext` is over (X1, X2, Y, Y1) and must marginalize to `p`.
LockabilityReport lockability_bound_check(const JointPMF& p, const JointPMF& p_ext,
                                          bool with_synergy = true, RestartOptions options = {});

}  // namespace infodecomp
