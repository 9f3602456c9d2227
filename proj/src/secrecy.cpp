#include "infodecomp/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/entropy_terms.hpp"
#include "detail/solvers.hpp"

namespace infodecomp {

namespace {

constexpr double kSynergyClampTol = 1e-6;

void require_three(const JointPMF& p, const char* what) {
  if (p.arity() != 3) {
    throw ValidationError(std::string(what) + " expects a pmf over (X1, X2, Y)");
  }
}

/// Alternating projections (with Dykstra's correction) onto the affine set of
/// joints with the given pairwise marginals and onto the nonnegative orthant.
class PolytopeProjector {
 public:
  explicit PolytopeProjector(const JointPMF& p)
      : d1_(p.dim(0)), d2_(p.dim(1)), dy_(p.dim(2)), a_(d1_ * dy_, 0.0), b_(d2_ * dy_, 0.0) {
    for (std::size_t i = 0; i < d1_; ++i) {
      for (std::size_t j = 0; j < d2_; ++j) {
        for (std::size_t y = 0; y < dy_; ++y) {
          const double v = p.mass()[cell(i, j, y)];
          a_[i * dy_ + y] += v;
          b_[j * dy_ + y] += v;
        }
      }
    }
  }

  void operator()(std::span<double> x) const {
    const std::size_t n = x.size();
    std::vector<double> p(n, 0.0), q(n, 0.0), y(n), prev(n);
    for (int it = 0; it < 5000; ++it) {
      std::copy(x.begin(), x.end(), prev.begin());
      for (std::size_t k = 0; k < n; ++k) y[k] = x[k] + p[k];
      project_affine(y);
      for (std::size_t k = 0; k < n; ++k) p[k] = x[k] + p[k] - y[k];
      for (std::size_t k = 0; k < n; ++k) {
        const double z = y[k] + q[k];
        x[k] = std::max(z, 0.0);
        q[k] = z - x[k];
      }
      double change = 0.0;
      for (std::size_t k = 0; k < n; ++k) change = std::max(change, std::abs(x[k] - prev[k]));
      if (change < 1e-16 && deviation(x) < 1e-14) break;
    }
  }

  double deviation(std::span<const double> x) const {
    std::vector<double> ra(a_.size(), 0.0), rb(b_.size(), 0.0);
    for (std::size_t i = 0; i < d1_; ++i) {
      for (std::size_t j = 0; j < d2_; ++j) {
        for (std::size_t y = 0; y < dy_; ++y) {
          ra[i * dy_ + y] += x[cell(i, j, y)];
          rb[j * dy_ + y] += x[cell(i, j, y)];
        }
      }
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) worst = std::max(worst, std::abs(ra[k] - a_[k]));
    for (std::size_t k = 0; k < b_.size(); ++k) worst = std::max(worst, std::abs(rb[k] - b_[k]));
    return worst;
  }

 private:
  std::size_t cell(std::size_t i, std::size_t j, std::size_t y) const {
    return (i * d2_ + j) * dy_ + y;
  }

  // Per y-slice: M + E_i/d2 + F_j/d1 - T/(d1 d2) with E, F the row and column defects.
  void project_affine(std::span<double> x) const {
    std::vector<double> e(d1_), f(d2_);
    for (std::size_t y = 0; y < dy_; ++y) {
      for (std::size_t i = 0; i < d1_; ++i) e[i] = a_[i * dy_ + y];
      for (std::size_t j = 0; j < d2_; ++j) f[j] = b_[j * dy_ + y];
      for (std::size_t i = 0; i < d1_; ++i) {
        for (std::size_t j = 0; j < d2_; ++j) {
          e[i] -= x[cell(i, j, y)];
          f[j] -= x[cell(i, j, y)];
        }
      }
      const double t = std::accumulate(e.begin(), e.end(), 0.0);
      const double scale = 1.0 / static_cast<double>(d1_ * d2_);
      for (std::size_t i = 0; i < d1_; ++i) {
        for (std::size_t j = 0; j < d2_; ++j) {
          x[cell(i, j, y)] += e[i] / static_cast<double>(d2_) +
                              f[j] / static_cast<double>(d1_) - t * scale;
        }
      }
    }
  }

  std::size_t d1_, d2_, dy_;
  std::vector<double> a_, b_;  // target (X1,Y) and (X2,Y) marginals
};

JointPMF joint_from(const JointPMF& p, std::vector<double> r) {
  for (auto& v : r) v = std::max(v, 0.0);
  const double s = std::accumulate(r.begin(), r.end(), 0.0);
  for (auto& v : r) v /= s;
  return JointPMF(p.alphabets(), std::move(r), p.support_eps());
}

double intrinsic_value(const JointPMF& p, const Channel& c) {
  return conditional_mutual_information(apply_channel(p, 2, c));
}

}  // namespace

OptReport intrinsic_information(const JointPMF& p, std::optional<std::size_t> yprime_card,
                                RestartOptions options) {
  require_three(p, "intrinsic_information");
  const std::size_t dy = p.dim(2);
  const std::size_t m = yprime_card.value_or(dy);
  if (m < 1 || m > dy) {
    throw ValidationError("yprime_card must lie in [1, |Y|] = [1, " + std::to_string(dy) + "]");
  }
  const Alphabet out = detail::indexed_alphabet("y'", m);
  const std::size_t d12 = p.dim(0) * p.dim(1);

  detail::EntropyCombination objective({p.dim(0), p.dim(1), m});
  objective.add_cmi(1.0, {0}, {1}, {2});
  std::vector<double> c(dy * m), r(d12 * m), grad_r(d12 * m), grad_c(dy * m);
  auto fg = [&](std::span<const double> theta, std::span<double> grad) {
    detail::softmax_rows(theta, m, c);
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t x = 0; x < d12; ++x) {
      for (std::size_t y = 0; y < dy; ++y) {
        const double v = p.mass()[x * dy + y];
        if (v == 0.0) continue;
        for (std::size_t t = 0; t < m; ++t) r[x * m + t] += v * c[y * m + t];
      }
    }
    const double f = objective.value_and_gradient(r, grad_r);
    std::fill(grad_c.begin(), grad_c.end(), 0.0);
    for (std::size_t x = 0; x < d12; ++x) {
      for (std::size_t y = 0; y < dy; ++y) {
        const double v = p.mass()[x * dy + y];
        for (std::size_t t = 0; t < m; ++t) grad_c[y * m + t] += v * grad_r[x * m + t];
      }
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    detail::softmax_rows_backward(c, grad_c, m, grad);
    return f;
  };

  OptReport best;
  best.seed = options.seed;
  best.bound_kind = BoundKind::upper;
  bool have = false;
  auto consider = [&](const Channel& ch, bool converged, std::string by) {
    const double v = intrinsic_value(p, ch);
    if (have && !(v < best.value)) return;
    have = true;
    best.value = v;
    best.achiever = ch;
    best.converged = converged;
    best.achieved_by = std::move(by);
  };

  detail::DescentOptions descent;
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    detail::Rng rng(options.seed + restart);
    std::vector<double> theta;
    for (std::size_t y = 0; y < dy; ++y) {
      for (auto v : rng.simplex_logits(m)) theta.push_back(v);
    }
    auto res = detail::lbfgs_minimize(fg, std::move(theta), descent);
    std::vector<double> rows(dy * m);
    detail::softmax_rows(res.x, m, rows);
    consider(Channel(p.alphabet(2), out, std::move(rows)), res.converged,
             "restart " + std::to_string(restart));
  }
  best.restarts_run = options.restarts;

  std::vector<double> first(m, 0.0);
  first[0] = 1.0;
  consider(Channel::constant(p.alphabet(2), out, first), true, "candidate constant channel");
  if (m == dy) {
    std::vector<double> id(dy * m, 0.0);
    for (std::size_t y = 0; y < dy; ++y) id[y * m + y] = 1.0;
    consider(Channel(p.alphabet(2), out, std::move(id)), true, "candidate identity channel");
  }
  return best;
}

double polytope_deviation(const JointPMF& p, const JointPMF& candidate) {
  require_three(p, "polytope_deviation");
  if (candidate.shape() != p.shape()) throw ValidationError("shape mismatch");
  return std::max(max_abs_difference(marginalize(candidate, {0, 2}), marginalize(p, {0, 2})),
                  max_abs_difference(marginalize(candidate, {1, 2}), marginalize(p, {1, 2})));
}

JointPMF conditionally_independent_point(const JointPMF& p) {
  require_three(p, "conditionally_independent_point");
  const auto a = marginalize(p, {0, 2});
  const auto b = marginalize(p, {1, 2});
  const auto py = marginalize(p, {2});
  std::vector<double> r(p.size(), 0.0);
  for (std::size_t i = 0; i < p.dim(0); ++i) {
    for (std::size_t j = 0; j < p.dim(1); ++j) {
      for (std::size_t y = 0; y < p.dim(2); ++y) {
        const double m = py.mass()[y];
        if (m > 0.0) r[(i * p.dim(1) + j) * p.dim(2) + y] = a.at({i, y}) * b.at({j, y}) / m;
      }
    }
  }
  return joint_from(p, std::move(r));
}

OptReport union_information(const JointPMF& p, RestartOptions options) {
  require_three(p, "union_information");
  const PolytopeProjector project(p);
  detail::EntropyCombination objective(p.shape());
  objective.add_cmi(1.0, {0, 1}, {2});
  auto fg = [&](std::span<const double> r, std::span<double> grad) {
    return objective.value_and_gradient(r, grad);
  };
  auto projector = [&](std::span<double> x) { project(x); };

  OptReport best;
  best.seed = options.seed;
  best.bound_kind = BoundKind::upper;
  bool have = false;
  bool have_feasible = false;
  auto consider = [&](const JointPMF& joint, bool converged, std::string by) {
    const double dev = polytope_deviation(p, joint);
    const bool feasible = dev <= kPolytopeTol;
    const double v = mutual_information(joint, {0, 1}, {2});
    bool take = !have;
    if (have) take = feasible ? (!have_feasible || v < best.value) : (!have_feasible && dev < best.constraint_violation);
    if (!take) return;
    have = true;
    have_feasible = have_feasible || feasible;
    best.value = v;
    best.achiever = joint;
    best.constraint_violation = dev;
    best.converged = converged && feasible;
    best.achieved_by = std::move(by);
  };

  detail::DescentOptions descent;
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    std::vector<double> x0(p.mass().begin(), p.mass().end());
    if (restart > 0) {
      detail::Rng rng(options.seed + restart);
      const auto d = rng.dirichlet(x0.size());
      for (std::size_t k = 0; k < x0.size(); ++k) x0[k] = 0.5 * x0[k] + 0.5 * d[k];
    }
    auto res = detail::projected_gradient_minimize(fg, projector, std::move(x0), descent);
    consider(joint_from(p, res.x), res.converged, "restart " + std::to_string(restart));
  }
  best.restarts_run = options.restarts;
  consider(p, true, "candidate input joint");
  consider(conditionally_independent_point(p), true, "candidate conditionally independent point");
  return best;
}

SynergyReport synergy_gk(const JointPMF& p, RestartOptions options) {
  require_three(p, "synergy_gk");
  SynergyReport s;
  s.intrinsic = intrinsic_information(p, {}, options);
  s.union_info = union_information(p, options);
  s.via_intrinsic = conditional_mutual_information(p) - s.intrinsic.value;
  if (s.via_intrinsic < 0.0 && s.via_intrinsic >= -kSynergyClampTol) {
    s.via_intrinsic = 0.0;
    s.clamped = true;
  }
  s.via_union = mutual_information(p, {0, 1}, {2}) - s.union_info.value;
  s.gap = s.via_intrinsic - s.via_union;
  return s;
}

LockabilityReport lockability_bound_check(const JointPMF& p, const JointPMF& p_ext,
                                          bool with_synergy, RestartOptions options) {
  require_three(p, "lockability_bound_check");
  if (p_ext.arity() != 4) throw ValidationError("extended pmf must be over (X1, X2, Y, Y1)");
  const auto back = marginalize(p_ext, {0, 1, 2});
  if (back.alphabets() != p.alphabets() || max_abs_difference(back, p) > kNormalizationTol) {
    throw ValidationError("extended pmf does not marginalize to the given pmf");
  }
  LockabilityReport r;
  r.cmi_with = conditional_mutual_information(p_ext, {0}, {1}, {2, 3});
  r.cmi_without = conditional_mutual_information(p);
  r.cmi_difference = r.cmi_with - r.cmi_without;
  r.bound = entropy(p_ext, {3});
  r.holds = std::abs(r.cmi_difference) <= r.bound + kNegativeInfoTol;
  if (with_synergy) {
    const auto merged = merge_variables(p_ext, {2, 3});
    const double with = r.cmi_with - intrinsic_information(merged, {}, options).value;
    const double without = r.cmi_without - intrinsic_information(p, {}, options).value;
    r.synergy_difference = with - without;
  }
  return r;
}

}  // namespace infodecomp
