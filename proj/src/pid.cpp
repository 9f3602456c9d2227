#include "infodecomp/pid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "detail/entropy_terms.hpp"
#include "detail/solvers.hpp"
#include "infodecomp/common_info.hpp"
#include "infodecomp/secrecy.hpp"

namespace infodecomp {

namespace {

constexpr double kExactTol = 1e-9;

std::string format_bits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_three(const JointPMF& p, const char* what) {
  if (p.arity() != 3) throw ValidationError(std::string(what) + " expects a three-variable pmf");
}

VarList predictors_of(const JointPMF& p) {
  VarList v;
  for (std::size_t i = 0; i + 1 < p.arity(); ++i) v.push_back(i);
  return v;
}

/// Joint pmf of (Q, Y) where Q labels the blocks of `meet_partition` over the
/// support cells of the predictor marginal.
JointPMF common_target_pmf(const JointPMF& p, const Partition& q) {
  const auto preds = predictors_of(p);
  const auto marginal = marginalize(p, preds);
  std::vector<int> point_of_cell(marginal.size(), -1);
  int next = 0;
  for (std::size_t cell = 0; cell < marginal.size(); ++cell) {
    if (marginal.in_support(cell)) point_of_cell[cell] = next++;
  }
  const std::size_t nq = q.num_blocks();
  const std::size_t ny = p.dim(p.arity() - 1);
  std::vector<double> mass(nq * ny, 0.0);
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    const std::size_t xcell = cell / ny;
    const std::size_t y = cell % ny;
    const int point = point_of_cell[xcell];
    const std::size_t block = point < 0 ? 0 : static_cast<std::size_t>(q.block_of(point));
    mass[block * ny + y] += p.mass()[cell];
  }
  return JointPMF({detail::indexed_alphabet("q", nq), p.alphabet(p.arity() - 1)}, std::move(mass),
                  p.support_eps());
}

/// Objective pieces of the conditional common information over (Y, X1, X2, Q).
struct CondGKModel {
  const JointPMF& p;
  std::size_t dy, d1, d2, m;
  detail::EntropyCombination gain;     // I(Y X1; Q | X2)
  detail::EntropyCombination leakage;  // I(Y; Q | X1 X2)

  CondGKModel(const JointPMF& pmf, std::size_t q)
      : p(pmf), dy(pmf.dim(0)), d1(pmf.dim(1)), d2(pmf.dim(2)), m(q),
        gain({dy, d1, d2, q}), leakage({dy, d1, d2, q}) {
    gain.add_cmi(1.0, {0, 1}, {3}, {2});
    leakage.add_cmi(1.0, {0}, {3}, {1, 2});
  }

  std::size_t rows() const { return dy * d2; }
  std::size_t row_of(std::size_t y, std::size_t x2) const { return y * d2 + x2; }

  std::vector<double> joint(std::span<const double> w) const {
    std::vector<double> r(p.size() * m);
    for (std::size_t y = 0; y < dy; ++y) {
      for (std::size_t a = 0; a < d1; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
          const std::size_t cell = (y * d1 + a) * d2 + b;
          for (std::size_t q = 0; q < m; ++q) {
            r[cell * m + q] = p.mass()[cell] * w[row_of(y, b) * m + q];
          }
        }
      }
    }
    return r;
  }

  JointPMF achiever(std::span<const double> w) const {
    std::vector<Alphabet> alphabets = p.alphabets();
    alphabets.push_back(detail::indexed_alphabet("q", m));
    return JointPMF(std::move(alphabets), joint(w), p.support_eps());
  }
};

double cond_gk_gain(const JointPMF& a) { return conditional_mutual_information(a, {0, 1}, {3}, {2}); }
double cond_gk_leakage(const JointPMF& a) {
  return conditional_mutual_information(a, {0}, {3}, {1, 2});
}

}  // namespace

PIDAtoms pid_atoms(const JointPMF& p, double redundancy) {
  require_three(p, "pid_atoms");
  const double i1 = mutual_information(p, {0}, {2});
  const double i2 = mutual_information(p, {1}, {2});
  const double i12 = mutual_information(p, {0, 1}, {2});
  if (!(redundancy >= -kExactTol) || redundancy > std::min(i1, i2) + kExactTol) {
    throw ValidationError("redundancy must lie in [0, min(I(X1;Y), I(X2;Y))]");
  }
  PIDAtoms a;
  a.redundant = redundancy;
  a.unique1 = i1 - redundancy;
  a.unique2 = i2 - redundancy;
  a.synergistic = i12 - i1 - i2 + redundancy;
  a.negative_synergy = a.synergistic < -kExactTol;
  return a;
}

Partition predictor_meet(const JointPMF& p, const VarList& order) {
  if (p.arity() < 2) throw ValidationError("need at least one predictor and a target");
  const auto preds = predictors_of(p);
  if (order.empty()) throw ValidationError("empty predictor list");
  for (auto v : order) {
    if (v >= preds.size()) throw ValidationError("predictor index out of range");
  }
  const auto marginal = marginalize(p, preds);
  std::vector<std::string> labels;
  std::vector<double> weights;
  std::vector<std::vector<std::size_t>> values;
  for (std::size_t cell = 0; cell < marginal.size(); ++cell) {
    if (!marginal.in_support(cell)) continue;
    labels.push_back("c" + std::to_string(cell));
    weights.push_back(marginal.mass()[cell]);
    values.push_back(marginal.unflatten(cell));
  }
  auto space = std::make_shared<const SampleSpace>(std::move(labels), std::move(weights));
  auto partition_of = [&](std::size_t var) {
    std::vector<int> block(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) block[i] = static_cast<int>(values[i][var]);
    return Partition(space, std::move(block));
  };
  Partition q = partition_of(order.front());
  for (std::size_t i = 1; i < order.size(); ++i) q = meet(q, partition_of(order[i]));
  return q;
}

GKRedundancy gk_redundancy(const JointPMF& p) {
  if (p.arity() < 2 || p.arity() > 4) {
    throw ValidationError("gk_redundancy expects one to three predictors and a target");
  }
  const auto meet = predictor_meet(p, predictors_of(p));
  if (meet.num_blocks() == 1) return {0.0, 0.0};
  const auto qy = common_target_pmf(p, meet);
  return {gk_common_information(qy), mutual_information(qy)};
}

RedundancyMeasure gk_redundancy_measure() {
  return {"gk", [](const JointPMF& p) { return gk_redundancy(p).i_bits; }, true};
}

RedundancyMeasure wyner_redundancy_measure(RestartOptions options) {
  auto eval = [options](const JointPMF& p) {
    if (p.arity() == 2) return mutual_information(p);
    return wyner_common_information(marginalize(p, predictors_of(p)), {}, options).value;
  };
  return {"wyner", eval, true};
}

RedundancyMeasure constant_measure(double value) {
  return {"constant", [value](const JointPMF&) { return value; }, true};
}

AxiomReport check_wb_axioms(const RedundancyMeasure& m, const std::vector<JointPMF>& battery) {
  if (battery.empty()) throw ValidationError("axiom check needs a nonempty battery");
  AxiomReport report{m.name, 0, {}};
  auto flag = [&](std::size_t i, const char* axiom, std::string detail) {
    report.violations.push_back({i, axiom, std::move(detail)});
  };
  for (std::size_t i = 0; i < battery.size(); ++i) {
    JointPMF p = battery[i];
    if (p.arity() != 3 && p.arity() != 4) {
      throw ValidationError("battery entries must have two or three predictors and a target");
    }
    if (p.arity() == 4 && !m.supports_three) p = marginalize(p, {0, 1, 3});
    const std::size_t target = p.arity() - 1;
    ++report.pmfs_checked;
    const double v = m.evaluator(p);

    if (v < -kNegativeInfoTol) flag(i, "GP", "value " + format_bits(v));

    VarList swap_order{1, 0};
    for (std::size_t k = 2; k < p.arity(); ++k) swap_order.push_back(k);
    const double swapped = m.evaluator(permute(p, swap_order));
    if (std::abs(swapped - v) > kExactTol) {
      flag(i, "S", "value " + format_bits(v) + " vs swapped " + format_bits(swapped));
    }

    const auto single = marginalize(p, {0, target});
    const double vs = m.evaluator(single);
    const double mi = mutual_information(single);
    if (std::abs(vs - mi) > kExactTol) {
      flag(i, "I", "single predictor " + format_bits(vs) + " vs I(X1;Y) " + format_bits(mi));
    }

    if (p.arity() == 4) {
      const double v2 = m.evaluator(marginalize(p, {0, 1, target}));
      if (v > v2 + kExactTol) {
        flag(i, "M", "three predictors " + format_bits(v) + " > two " + format_bits(v2));
      }
    } else if (v > vs + kExactTol) {
      flag(i, "M", "two predictors " + format_bits(v) + " > one " + format_bits(vs));
    }
  }
  return report;
}

UniqueInformation conditional_mi_unique() {
  return {"conditional-mi", [](const JointPMF& p, int which) {
            return which == 1 ? conditional_mutual_information(p, {2}, {0}, {1})
                              : conditional_mutual_information(p, {2}, {1}, {0});
          }};
}

UniqueInformation intrinsic_unique(RestartOptions options) {
  return {"intrinsic", [options](const JointPMF& p, int which) {
            const VarList order = which == 1 ? VarList{2, 0, 1} : VarList{2, 1, 0};
            return intrinsic_information(permute(p, order), {}, options).value;
          }};
}

UniqueInformation conditional_gk_unique(RestartOptions options) {
  return {"conditional-gk", [options](const JointPMF& p, int which) {
            const VarList order = which == 1 ? VarList{2, 0, 1} : VarList{2, 1, 0};
            return conditional_gk(permute(p, order), {}, options).value;
          }};
}

double consistency_residual(const UniqueInformation& u, const JointPMF& p) {
  require_three(p, "consistency_residual");
  const double lhs = mutual_information(p, {2}, {0}) + u.evaluator(p, 2);
  const double rhs = mutual_information(p, {2}, {1}) + u.evaluator(p, 1);
  return std::abs(lhs - rhs);
}

OptReport conditional_gk(const JointPMF& p, std::optional<std::size_t> q_card,
                         RestartOptions options) {
  require_three(p, "conditional_gk");
  const std::size_t m = q_card.value_or(std::min(p.dim(0), p.dim(1)));
  if (m < 1 || m > kMaxAlphabetSize) throw ValidationError("q_card out of range");
  CondGKModel model(p, m);
  const std::size_t params = model.rows() * m;

  OptReport best;
  best.seed = options.seed;
  best.bound_kind = BoundKind::lower;
  bool have = false;
  bool have_feasible = false;
  auto consider = [&](const JointPMF& a, bool converged, std::string by) {
    const double leak = cond_gk_leakage(a);
    const double v = cond_gk_gain(a);
    const bool feasible = leak <= kCondGKFeasibleTol;
    bool take = !have;
    if (have) {
      take = feasible ? (!have_feasible || v > best.value)
                      : (!have_feasible && leak < best.constraint_violation);
    }
    if (!take) return;
    have = true;
    have_feasible = have_feasible || feasible;
    best.value = v;
    best.achiever = a;
    best.constraint_violation = leak;
    best.converged = converged && feasible;
    best.achieved_by = std::move(by);
  };

  std::vector<double> w(params), r(p.size() * m), g_gain(r.size()), g_leak(r.size()),
      g_w(params);
  const double weights[] = {1e2, 1e3, 1e4, 1e5, 1e6};
  detail::DescentOptions descent;
  descent.max_iterations = 3000;

  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    detail::Rng rng(options.seed + restart);
    std::vector<double> theta;
    theta.reserve(params);
    for (std::size_t row = 0; row < model.rows(); ++row) {
      for (auto v : rng.simplex_logits(m)) theta.push_back(v);
    }
    bool converged = true;
    for (double penalty : weights) {
      auto fg = [&](std::span<const double> t, std::span<double> grad) {
        detail::softmax_rows(t, m, w);
        r = model.joint(w);
        const double f = -model.gain.value_and_gradient(r, g_gain) +
                         penalty * model.leakage.value_and_gradient(r, g_leak);
        std::fill(g_w.begin(), g_w.end(), 0.0);
        for (std::size_t y = 0; y < model.dy; ++y) {
          for (std::size_t a = 0; a < model.d1; ++a) {
            for (std::size_t b = 0; b < model.d2; ++b) {
              const std::size_t cell = (y * model.d1 + a) * model.d2 + b;
              const double mass = p.mass()[cell];
              if (mass == 0.0) continue;
              const std::size_t row = model.row_of(y, b);
              for (std::size_t q = 0; q < m; ++q) {
                const std::size_t k = cell * m + q;
                g_w[row * m + q] += mass * (-g_gain[k] + penalty * g_leak[k]);
              }
            }
          }
        }
        std::fill(grad.begin(), grad.end(), 0.0);
        detail::softmax_rows_backward(w, g_w, m, grad);
        return f;
      };
      auto res = detail::lbfgs_minimize(fg, std::move(theta), descent);
      theta = std::move(res.x);
      converged = res.converged;
    }
    detail::softmax_rows(theta, m, w);
    consider(model.achiever(w), converged, "restart " + std::to_string(restart));
  }
  best.restarts_run = options.restarts;

  // Deterministic maps q = f(y, x2): exhaustive when small, the constant map otherwise.
  const std::size_t rows = model.rows();
  const bool exhaustive = rows <= 8 && m <= 4;
  std::vector<std::size_t> code(rows, 0);
  while (true) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t row = 0; row < rows; ++row) w[row * m + code[row]] = 1.0;
    consider(model.achiever(w), true, exhaustive ? "deterministic map" : "constant map");
    if (!exhaustive) break;
    std::size_t k = rows;
    while (k-- > 0) {
      if (++code[k] < m) break;
      code[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

}  // namespace infodecomp
