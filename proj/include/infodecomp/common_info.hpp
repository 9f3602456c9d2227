#pragma once

// Common information of dependent variables: the Gács–Körner common part read
// off the zero pattern of the joint pmf, Wyner's common information and the
// minimum assisted common information (both by seeded numeric optimization).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infodecomp/optim.hpp"
#include "infodecomp/prob.hpp"

namespace infodecomp {

/// Edges are the strictly positive cells (mass > support_eps).
struct BipartiteGraph {
  Alphabet left;
  Alphabet right;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted (x, y)

  bool has_edge(std::size_t x, std::size_t y) const;
};

BipartiteGraph bipartite_graph(const JointPMF& p);

struct MDCComponent {
  std::vector<std::size_t> xs;
  std::vector<std::size_t> ys;
  double mass = 0.0;
};

/// Connected components of the bipartite graph, ordered by smallest x index.
/// Zero-mass symbols belong to no component (id -1).
struct MDCDecomposition {
  std::vector<MDCComponent> components;
  std::vector<int> component_of_x;
  std::vector<int> component_of_y;

  std::size_t size() const { return components.size(); }
  std::vector<double> masses() const;
};

MDCDecomposition mdc_decompose(const BipartiteGraph& g, const JointPMF& p);
MDCDecomposition mdc_decompose(const JointPMF& p);

/// Q = f(X) = g(Y): component ids of each symbol (-1 for zero-mass symbols).
struct CommonRV {
  std::vector<int> f;
  std::vector<int> g;
  std::size_t num_values = 0;
};

CommonRV common_rv(const JointPMF& p);

/// The joint pmf of (X, Y, Q) with Q the common variable.
JointPMF with_common_rv(const JointPMF& p);

/// Meet of the listed variables over the support: the component of every cell of
/// the marginal on `vars` (-1 off the support) together with component masses.
struct SupportMeet {
  std::vector<int> component_of_cell;
  std::vector<double> masses;
};
SupportMeet support_meet(const JointPMF& p, const VarList& vars);

/// C_GK = H(X1 ∧ ... ∧ XK) over all variables of `p` (arity >= 2).
double gk_common_information(const JointPMF& p);

/// Whether MDC `component` is a zero-information component: p(x|y) is the same
/// for every y of the component (within 1e-9).
bool is_zic(std::size_t component, const JointPMF& p);

/// True iff every MDC is a ZIC; equivalently C_GK = I(X;Y), or I(X;Y|Q) = 0 with Q
/// the common variable.
bool is_perfectly_resolvable(const JointPMF& p);

/// I(X;Y) - C_GK(X;Y).
double residual_information(const JointPMF& p);

/// Upper bound on Wyner's common information of all variables of `p` (arity 2 or 3):
/// min I(X1..XK; Q) over p(q) prod_k p(xk|q) whose marginal reproduces `p`.
/// Default q_card is the product of the alphabet sizes. Achiever: pmf over (Q, X1..XK).
OptReport wyner_common_information(const JointPMF& p, std::optional<std::size_t> q_card = {},
                                   RestartOptions options = {});

/// Upper bound on min_Q I(Y;Q|X) + I(X;Q|Y) + I(X;Y|Q) over p(q|x,y) with |Q| = q_card
/// (default |X||Y|). Achiever: pmf over (X, Y, Q).
OptReport min_assisted_common_information(const JointPMF& p,
                                          std::optional<std::size_t> q_card = {},
                                          RestartOptions options = {});

struct CIOrderingReport {
  std::size_t arity = 0;
  // Pairwise quantities of (X1, X2).
  double gk = 0.0;
  double mi = 0.0;
  double wyner_upper = 0.0;
  // Three-variable relations (arity 3 only).
  double gk_all = 0.0;
  double min_pairwise_mi = 0.0;
  double max_pairwise_mi = 0.0;
  double wyner_all_upper = 0.0;
  bool holds = true;
  std::vector<std::string> violations;
};

/// Evaluates C_GK <= I <= C_W (pairwise) and, for three variables,
/// C_GK(X1;X2;X3) <= C_GK(X1;X2) and C_GK(X1;X2;X3) <= min I(Xi;Xj) <= max I(Xi;Xj) <= C_W(X1;X2;X3).
CIOrderingReport check_ci_ordering(const JointPMF& p, RestartOptions options = {});

}  // namespace infodecomp
