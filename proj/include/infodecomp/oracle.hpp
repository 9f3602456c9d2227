#pragma once

// Brute-force reference solvers for tiny instances. They share no code with the
// optimizers: every value is recomputed from raw masses on an explicit grid,
// then the best grid cell is refined by a few rounds of local zooming.

#include <cstddef>
#include <vector>

#include "infodecomp/prob.hpp"
#include "infodecomp/zero_error.hpp"

namespace infodecomp::oracle {

struct GridResult {
  double value;               // +inf when no grid point was feasible
  std::vector<double> point;  // parameters of the best grid point
  std::size_t evaluations = 0;
};

/// Wyner common information of a 2x2 pmf restricted to binary Q. Grid over
/// (p(q=0), p(x=0|q=0)); the remaining parameters follow from the marginal match.
GridResult wyner_grid(const JointPMF& p, double resolution = 0.02);

/// C_min of a 2x2 pmf with binary Q: grid over the four values p(q=0|x,y).
GridResult cmin_grid(const JointPMF& p, double resolution = 0.02);

/// min over binary channels p(y'|y) of I(X1;X2|Y') for p over (X1, X2, Y) with |Y| = 2.
GridResult intrinsic_grid(const JointPMF& p, double resolution = 0.01);

/// Union information of a 2x2x2 pmf: the polytope is a rectangle in the two
/// masses q(0,0,y'), scanned at the given step with both endpoints included.
GridResult union_grid(const JointPMF& p, double resolution = 0.005);

/// max I(YX1;Q|X2) over deterministic q = f(y, x2) with q_card values and
/// I(Y;Q|X1X2) <= 1e-9, for p over (Y, X1, X2).
GridResult conditional_gk_deterministic(const JointPMF& p, std::size_t q_card);

inline constexpr std::size_t kMaxBruteForceVertices = 10;

/// Chromatic number by scanning every set partition of the vertices.
std::size_t chromatic_number(const CharacteristicGraph& g);

}  // namespace infodecomp::oracle
