#pragma once

// Bivariate partial information decomposition: atom bookkeeping for a given
// redundancy value, the zero-error (Gács–Körner) redundancy, Williams–Beer axiom
// checks, the chain-rule consistency residual of unique-information candidates
// and the conditional Gács–Körner common information.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infodecomp/lattice.hpp"
#include "infodecomp/optim.hpp"
#include "infodecomp/prob.hpp"

namespace infodecomp {

struct PIDAtoms {
  double redundant = 0.0;
  double unique1 = 0.0;
  double unique2 = 0.0;
  double synergistic = 0.0;
  /// Synergy came out below -1e-9; it is reported as is.
  bool negative_synergy = false;
};

/// Atoms for p over (X1, X2, Y) given the redundancy R, 0 <= R <= min(I(X1;Y), I(X2;Y)).
PIDAtoms pid_atoms(const JointPMF& p, double redundancy);

/// Meet of the predictors (every variable but the last) on the support of their
/// joint marginal, folded pairwise in the given order. The space points are the
/// support cells of that marginal, weighted by their mass.
Partition predictor_meet(const JointPMF& p, const VarList& order);

struct GKRedundancy {
  double c_bits = 0.0;  // C_GK(Q;Y)
  double i_bits = 0.0;  // I(Q;Y)
};

/// Q = X1 ∧ ... ∧ XK for p over (X1, ..., XK, Y), K in {1, 2, 3}.
GKRedundancy gk_redundancy(const JointPMF& p);

/// Redundancy of the predictors (all variables but the last) about the last one.
struct RedundancyMeasure {
  std::string name;
  std::function<double(const JointPMF&)> evaluator;
  /// Accepts three predictors, so monotonicity from three to two can be checked.
  bool supports_three = false;
};

RedundancyMeasure gk_redundancy_measure();
/// C_W of the predictors for two or three predictors, I(X1;Y) for one.
RedundancyMeasure wyner_redundancy_measure(RestartOptions options = {});
RedundancyMeasure constant_measure(double value);

struct AxiomViolation {
  std::size_t pmf_index;
  std::string axiom;  // "GP", "S", "I" or "M"
  std::string detail;
};

struct AxiomReport {
  std::string measure;
  std::size_t pmfs_checked = 0;
  std::vector<AxiomViolation> violations;
};

/// Battery entries are over (X1, X2, Y) or (X1, X2, X3, Y).
AxiomReport check_wb_axioms(const RedundancyMeasure& m, const std::vector<JointPMF>& battery);

/// Unique information U(Y; X_i | X_j) from p over (X1, X2, Y); `which` is 1 or 2.
struct UniqueInformation {
  std::string name;
  std::function<double(const JointPMF&, int which)> evaluator;
};

UniqueInformation conditional_mi_unique();
UniqueInformation intrinsic_unique(RestartOptions options = {});
UniqueInformation conditional_gk_unique(RestartOptions options = {});

/// |I(Y;X1) + U(Y;X2|X1) - I(Y;X2) - U(Y;X1|X2)| for p over (X1, X2, Y).
double consistency_residual(const UniqueInformation& u, const JointPMF& p);

inline constexpr double kCondGKFeasibleTol = 1e-6;

/// Lower bound on max I(YX1;Q|X2) over p(q|y,x2) subject to I(Y;Q|X1X2) = 0, for p
/// over (Y, X1, X2). Default q_card is min(|Y|, |X1|). Small instances are also
/// solved exhaustively over deterministic maps q = f(y, x2). Achiever: pmf over
/// (Y, X1, X2, Q).
OptReport conditional_gk(const JointPMF& p, std::optional<std::size_t> q_card = {},
                         RestartOptions options = {});

}  // namespace infodecomp
