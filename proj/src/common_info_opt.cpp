// Wyner's common information and the minimum assisted common information.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "detail/entropy_terms.hpp"
#include "detail/solvers.hpp"
#include "infodecomp/common_info.hpp"

namespace infodecomp {

namespace {

using detail::DescentOptions;
using detail::EntropyCombination;
using detail::Rng;

constexpr double kWynerFeasibleTol = 1e-7;

VarList iota_vars(std::size_t from, std::size_t to) {
  VarList v;
  for (std::size_t i = from; i < to; ++i) v.push_back(i);
  return v;
}

/// Maps each cell of `p` to an auxiliary value given by a deterministic labelling;
/// labels are renumbered by first appearance over the support, off-support cells get -1.
std::vector<int> compact_labels(const JointPMF& p, const std::vector<std::size_t>& raw,
                                std::size_t* count) {
  std::vector<int> out(p.size(), -1);
  std::vector<int> remap;
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    if (!p.in_support(cell)) continue;
    if (raw[cell] >= remap.size()) remap.resize(raw[cell] + 1, -1);
    auto& id = remap[raw[cell]];
    if (id < 0) id = static_cast<int>(std::count_if(remap.begin(), remap.end(),
                                                    [](int v) { return v >= 0; }));
    out[cell] = id;
  }
  *count = static_cast<std::size_t>(
      std::count_if(remap.begin(), remap.end(), [](int v) { return v >= 0; }));
  return out;
}

struct Labelling {
  std::string name;
  std::vector<int> q_of_cell;
  std::size_t count;
};

/// Deterministic auxiliary variables that are natural first guesses: constant,
/// each single variable, the full cell and the common part.
std::vector<Labelling> candidate_labellings(const JointPMF& p) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> raw;
  raw.emplace_back("Q=const", std::vector<std::size_t>(p.size(), 0));
  for (std::size_t k = 0; k < p.arity(); ++k) {
    std::vector<std::size_t> lab(p.size());
    for (std::size_t cell = 0; cell < p.size(); ++cell) lab[cell] = p.unflatten(cell)[k];
    raw.emplace_back("Q=X" + std::to_string(k + 1), std::move(lab));
  }
  {
    std::vector<std::size_t> lab(p.size());
    std::iota(lab.begin(), lab.end(), 0);
    raw.emplace_back("Q=cell", std::move(lab));
  }
  {
    const auto meet = support_meet(p, iota_vars(0, p.arity()));
    std::vector<std::size_t> lab(p.size(), 0);
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      lab[cell] = static_cast<std::size_t>(std::max(meet.component_of_cell[cell], 0));
    }
    raw.emplace_back("Q=common", std::move(lab));
  }
  std::vector<Labelling> out;
  for (auto& [name, lab] : raw) {
    std::size_t count = 0;
    auto q = compact_labels(p, lab, &count);
    out.push_back({name, std::move(q), std::max<std::size_t>(count, 1)});
  }
  return out;
}

void keep_if_better(OptReport& best, bool& have, double value, double violation, bool feasible,
                    const std::function<void(OptReport&)>& fill) {
  // Feasible points beat infeasible ones; then lower value, then lower violation.
  const bool best_feasible = have && best.converged;
  bool take = !have;
  if (have) {
    if (feasible != best_feasible) {
      take = feasible;
    } else if (feasible) {
      take = value < best.value;
    } else {
      take = violation < best.constraint_violation;
    }
  }
  if (!take) return;
  have = true;
  best.value = value;
  best.constraint_violation = violation;
  best.converged = feasible;
  fill(best);
}

// Wyner ----------------------------------------------------------------------

class WynerModel {
 public:
  WynerModel(const JointPMF& p, std::size_t m)
      : K_(p.arity()), m_(m), nx_(p.size()), dims_(p.shape()), target_(p.mass().begin(), p.mass().end()),
        entropies_([&] {
          std::vector<std::size_t> shape{m};
          shape.insert(shape.end(), dims_.begin(), dims_.end());
          return shape;
        }()) {
    entropies_.add_cmi(1.0, {0}, iota_vars(1, K_ + 1));
    offsets_.push_back(m_);
    for (std::size_t k = 0; k < K_; ++k) offsets_.push_back(offsets_.back() + m_ * dims_[k]);
    xs_.resize(nx_ * K_);
    for (std::size_t x = 0; x < nx_; ++x) {
      const auto idx = p.unflatten(x);
      for (std::size_t k = 0; k < K_; ++k) xs_[x * K_ + k] = idx[k];
    }
    probs_.resize(offsets_.back());
    r_.resize(m_ * nx_);
    grad_r_.resize(m_ * nx_);
    grad_probs_.resize(offsets_.back());
  }

  std::size_t num_params() const { return offsets_.back(); }
  std::size_t cells() const { return m_ * nx_; }

  /// Softmax parameters into r(q, x) = pi(q) prod_k a_k(x_k | q).
  void forward(std::span<const double> theta) {
    detail::softmax_rows(theta.subspan(0, m_), m_, std::span(probs_).subspan(0, m_));
    for (std::size_t k = 0; k < K_; ++k) {
      const auto len = offsets_[k + 1] - offsets_[k];
      detail::softmax_rows(theta.subspan(offsets_[k], len), dims_[k],
                           std::span(probs_).subspan(offsets_[k], len));
    }
    for (std::size_t q = 0; q < m_; ++q) {
      for (std::size_t x = 0; x < nx_; ++x) {
        double v = probs_[q];
        for (std::size_t k = 0; k < K_; ++k) v *= a(k, q, xs_[x * K_ + k]);
        r_[q * nx_ + x] = v;
      }
    }
  }

  std::vector<double> residual() const {
    std::vector<double> c(nx_, 0.0);
    for (std::size_t q = 0; q < m_; ++q) {
      for (std::size_t x = 0; x < nx_; ++x) c[x] += r_[q * nx_ + x];
    }
    for (std::size_t x = 0; x < nx_; ++x) c[x] -= target_[x];
    return c;
  }

  /// Augmented Lagrangian mu I(Q;X) + <lambda, c> + w/2 |c|^2 and its gradient.
  double lagrangian(std::span<const double> theta, std::span<double> grad,
                    const std::vector<double>& lambda, double w, double mu = 1.0) {
    forward(theta);
    double f = 0.0;
    if (mu > 0.0) {
      f = mu * entropies_.value_and_gradient(r_, grad_r_);
      if (mu != 1.0) {
        for (auto& g : grad_r_) g *= mu;
      }
    } else {
      std::fill(grad_r_.begin(), grad_r_.end(), 0.0);
    }
    const auto c = residual();
    for (std::size_t x = 0; x < nx_; ++x) {
      f += lambda[x] * c[x] + 0.5 * w * c[x] * c[x];
      const double dc = lambda[x] + w * c[x];
      for (std::size_t q = 0; q < m_; ++q) grad_r_[q * nx_ + x] += dc;
    }
    backward(theta, grad);
    return f;
  }

  const std::vector<double>& r() const { return r_; }

 private:
  double a(std::size_t k, std::size_t q, std::size_t v) const {
    return probs_[offsets_[k] + q * dims_[k] + v];
  }

  void backward(std::span<const double> theta, std::span<double> grad) {
    (void)theta;
    std::fill(grad_probs_.begin(), grad_probs_.end(), 0.0);
    for (std::size_t q = 0; q < m_; ++q) {
      for (std::size_t x = 0; x < nx_; ++x) {
        const double g = grad_r_[q * nx_ + x];
        if (g == 0.0) continue;
        const std::size_t* xi = &xs_[x * K_];
        double prod_all = 1.0;
        for (std::size_t k = 0; k < K_; ++k) prod_all *= a(k, q, xi[k]);
        grad_probs_[q] += g * prod_all;
        for (std::size_t k = 0; k < K_; ++k) {
          double others = probs_[q];
          for (std::size_t j = 0; j < K_; ++j) {
            if (j != k) others *= a(j, q, xi[j]);
          }
          grad_probs_[offsets_[k] + q * dims_[k] + xi[k]] += g * others;
        }
      }
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    detail::softmax_rows_backward(std::span(probs_).subspan(0, m_),
                                  std::span(grad_probs_).subspan(0, m_), m_, grad.subspan(0, m_));
    for (std::size_t k = 0; k < K_; ++k) {
      const auto off = offsets_[k];
      const auto len = offsets_[k + 1] - off;
      detail::softmax_rows_backward(std::span(probs_).subspan(off, len),
                                    std::span(grad_probs_).subspan(off, len), dims_[k],
                                    grad.subspan(off, len));
    }
  }

  std::size_t K_, m_, nx_;
  std::vector<std::size_t> dims_;
  std::vector<double> target_;
  EntropyCombination entropies_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> xs_;
  std::vector<double> probs_, r_, grad_r_, grad_probs_;
};

JointPMF wyner_achiever(const JointPMF& p, std::size_t m, std::vector<double> r) {
  std::vector<Alphabet> alphabets{detail::indexed_alphabet("q", m)};
  for (const auto& a : p.alphabets()) alphabets.push_back(a);
  for (auto& v : r) v = std::max(v, 0.0);
  const double s = std::accumulate(r.begin(), r.end(), 0.0);
  for (auto& v : r) v /= s;
  return JointPMF(std::move(alphabets), std::move(r), p.support_eps());
}

double wyner_violation(const JointPMF& p, const JointPMF& achiever) {
  return max_abs_difference(marginalize(achiever, iota_vars(1, achiever.arity())), p);
}

double wyner_value(const JointPMF& achiever) {
  return mutual_information(achiever, {0}, iota_vars(1, achiever.arity()));
}

/// r(q, x) = p(q) prod_k p(x_k | q) for a deterministic Q = g(X).
std::vector<double> factorized_from_labels(const JointPMF& p, const Labelling& lab,
                                           std::size_t m) {
  const std::size_t K = p.arity();
  std::vector<double> pq(m, 0.0);
  std::vector<std::vector<double>> cond(K);
  for (std::size_t k = 0; k < K; ++k) cond[k].assign(m * p.dim(k), 0.0);
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    if (lab.q_of_cell[cell] < 0) continue;
    const auto q = static_cast<std::size_t>(lab.q_of_cell[cell]);
    const double v = p.mass()[cell];
    pq[q] += v;
    const auto idx = p.unflatten(cell);
    for (std::size_t k = 0; k < K; ++k) cond[k][q * p.dim(k) + idx[k]] += v;
  }
  std::vector<double> r(m * p.size(), 0.0);
  for (std::size_t q = 0; q < m; ++q) {
    if (pq[q] <= 0.0) continue;
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      const auto idx = p.unflatten(cell);
      double v = pq[q];
      for (std::size_t k = 0; k < K; ++k) v *= cond[k][q * p.dim(k) + idx[k]] / pq[q];
      r[q * p.size() + cell] = v;
    }
  }
  return r;
}

// Assisted common information ------------------------------------------------

EntropyCombination cmin_objective(std::size_t nx, std::size_t ny, std::size_t m) {
  EntropyCombination e({nx, ny, m});
  e.add_cmi(1.0, {1}, {2}, {0});
  e.add_cmi(1.0, {0}, {2}, {1});
  e.add_cmi(1.0, {0}, {1}, {2});
  return e;
}

double cmin_value(const JointPMF& xyq) {
  return clamp_information(conditional_mutual_information(xyq, {1}, {2}, {0}) +
                           conditional_mutual_information(xyq, {0}, {2}, {1}) +
                           conditional_mutual_information(xyq, {0}, {1}, {2}));
}

JointPMF cmin_achiever(const JointPMF& p, std::size_t m, std::span<const double> w) {
  std::vector<double> r(p.size() * m);
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    for (std::size_t q = 0; q < m; ++q) r[cell * m + q] = p.mass()[cell] * w[cell * m + q];
  }
  return JointPMF({p.alphabet(0), p.alphabet(1), detail::indexed_alphabet("q", m)}, std::move(r),
                  p.support_eps());
}

}  // namespace

OptReport wyner_common_information(const JointPMF& p, std::optional<std::size_t> q_card,
                                   RestartOptions options) {
  if (p.arity() != 2 && p.arity() != 3) {
    throw ValidationError("wyner_common_information expects two or three variables");
  }
  const std::size_t full = p.size();
  const std::size_t m = q_card.value_or(full);
  if (m < 1 || m > full) {
    throw ValidationError("q_card must lie in [1, " + std::to_string(full) + "]");
  }

  OptReport best;
  best.seed = options.seed;
  best.bound_kind = BoundKind::upper;
  bool have = false;

  WynerModel model(p, m);
  const double weights[] = {1e4, 1e5, 1e6};
  DescentOptions descent;
  descent.max_iterations = 3000;

  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    Rng rng(options.seed + restart);
    std::vector<double> theta;
    theta.reserve(model.num_params());
    for (auto v : rng.simplex_logits(m)) theta.push_back(v);
    for (std::size_t k = 0; k < p.arity(); ++k) {
      for (std::size_t q = 0; q < m; ++q) {
        for (auto v : rng.simplex_logits(p.dim(k))) theta.push_back(v);
      }
    }
    std::vector<double> lambda(p.size(), 0.0);
    bool converged = true;
    auto run_stage = [&](double w, double mu = 1.0) {
      auto fg = [&](std::span<const double> t, std::span<double> g) {
        return model.lagrangian(t, g, lambda, w, mu);
      };
      auto res = detail::lbfgs_minimize(fg, theta, descent);
      theta = std::move(res.x);
      model.forward(theta);
      const auto c = model.residual();
      for (std::size_t x = 0; x < lambda.size(); ++x) lambda[x] += w * c[x];
      converged = res.converged;
      double worst = 0.0;
      for (double v : c) worst = std::max(worst, std::abs(v));
      return worst;
    };
    // Fit the marginal first. Starting from the objective alone collapses every
    // restart onto the symmetric point where all components of Q coincide.
    run_stage(1.0, 0.0);
    std::fill(lambda.begin(), lambda.end(), 0.0);
    double worst = 0.0;
    for (double w : weights) worst = run_stage(w);
    for (int extra = 0; extra < 10 && worst > 1e-10; ++extra) worst = run_stage(weights[2]);

    auto achiever = wyner_achiever(p, m, model.r());
    const double violation = wyner_violation(p, achiever);
    const double value = wyner_value(achiever);
    const bool feasible = converged && violation <= kWynerFeasibleTol;
    keep_if_better(best, have, value, violation, feasible, [&](OptReport& r) {
      r.achiever = achiever;
      r.achieved_by = "restart " + std::to_string(restart);
    });
  }
  best.restarts_run = options.restarts;

  for (const auto& lab : candidate_labellings(p)) {
    if (lab.count > m) continue;
    auto achiever = wyner_achiever(p, m, factorized_from_labels(p, lab, m));
    const double violation = wyner_violation(p, achiever);
    if (violation > 1e-12) continue;  // Q does not make the variables independent
    keep_if_better(best, have, wyner_value(achiever), violation, true, [&](OptReport& r) {
      r.achiever = achiever;
      r.achieved_by = "candidate " + lab.name;
    });
  }
  return best;
}

OptReport min_assisted_common_information(const JointPMF& p, std::optional<std::size_t> q_card,
                                          RestartOptions options) {
  if (p.arity() != 2) throw ValidationError("min_assisted_common_information expects two variables");
  const std::size_t m = q_card.value_or(p.size());
  if (m < 1 || m > kMaxAlphabetSize) {
    throw ValidationError("q_card must lie in [1, " + std::to_string(kMaxAlphabetSize) + "]");
  }
  const std::size_t nx = p.dim(0);
  const std::size_t ny = p.dim(1);
  const auto objective = cmin_objective(nx, ny, m);
  const std::size_t cells = p.size() * m;

  std::vector<double> w(cells), r(cells), grad_r(cells), grad_w(cells);
  auto fg = [&](std::span<const double> theta, std::span<double> grad) {
    detail::softmax_rows(theta, m, w);
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      for (std::size_t q = 0; q < m; ++q) r[cell * m + q] = p.mass()[cell] * w[cell * m + q];
    }
    const double f = objective.value_and_gradient(r, grad_r);
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      for (std::size_t q = 0; q < m; ++q) {
        grad_w[cell * m + q] = grad_r[cell * m + q] * p.mass()[cell];
      }
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    detail::softmax_rows_backward(w, grad_w, m, grad);
    return f;
  };

  OptReport best;
  best.seed = options.seed;
  best.bound_kind = BoundKind::upper;
  bool have = false;
  DescentOptions descent;

  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    Rng rng(options.seed + restart);
    std::vector<double> theta;
    theta.reserve(cells);
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      for (auto v : rng.simplex_logits(m)) theta.push_back(v);
    }
    auto res = detail::lbfgs_minimize(fg, std::move(theta), descent);
    std::vector<double> ws(cells);
    detail::softmax_rows(res.x, m, ws);
    auto achiever = cmin_achiever(p, m, ws);
    keep_if_better(best, have, cmin_value(achiever), 0.0, res.converged, [&](OptReport& rep) {
      rep.achiever = achiever;
      rep.achieved_by = "restart " + std::to_string(restart);
    });
  }
  best.restarts_run = options.restarts;

  for (const auto& lab : candidate_labellings(p)) {
    if (lab.count > m) continue;
    std::vector<double> ws(cells, 0.0);
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      ws[cell * m + static_cast<std::size_t>(std::max(lab.q_of_cell[cell], 0))] = 1.0;
    }
    auto achiever = cmin_achiever(p, m, ws);
    keep_if_better(best, have, cmin_value(achiever), 0.0, true, [&](OptReport& rep) {
      rep.achiever = achiever;
      rep.achieved_by = "candidate " + lab.name;
    });
  }
  return best;
}

}  // namespace infodecomp
