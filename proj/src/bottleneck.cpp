#include "infodecomp/bottleneck.hpp"

#include <algorithm>
#include <optional>

#include "detail/entropy_terms.hpp"
#include "detail/solvers.hpp"

namespace infodecomp {

namespace {

constexpr double kTraceSlack = 1e-12;

bool monotone(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] > trace[i - 1] + kTraceSlack) return false;
  }
  return true;
}

}  // namespace

JointPMF cib_joint(const JointPMF& p, const Channel& encoder) {
  if (p.arity() != 3) throw ValidationError("cib_joint expects a pmf over (X1, X2, Y)");
  return extend_with_channel(p, {2}, encoder);
}

BottleneckSolution cib_optimize(const JointPMF& p, double beta, BottleneckOptions options,
                                const Channel* warm_start) {
  if (p.arity() != 3) throw ValidationError("cib_optimize expects a pmf over (X1, X2, Y)");
  if (!(beta >= 0.0)) throw ValidationError("beta must be nonnegative");
  const std::size_t dy = p.dim(2);
  const std::size_t m = options.t_card.value_or(dy);
  if (m < 1 || m > kMaxAlphabetSize) throw ValidationError("t_card must be at least 1");
  const Alphabet t_alphabet = detail::indexed_alphabet("t", m);
  if (warm_start && (warm_start->input() != p.alphabet(2) || warm_start->output().size() != m)) {
    throw ValidationError("warm-start encoder does not match the problem");
  }

  const std::size_t d12 = p.dim(0) * p.dim(1);
  detail::EntropyCombination objective({p.dim(0), p.dim(1), dy, m});
  objective.add_cmi(1.0, {2}, {3});
  objective.add_cmi(-beta, {0}, {3}, {1});
  std::vector<double> r(p.size() * m), grad_r(r.size());
  auto fg = [&](std::span<const double> c, std::span<double> grad) {
    for (std::size_t cell = 0; cell < p.size(); ++cell) {
      const std::size_t y = cell % dy;
      for (std::size_t t = 0; t < m; ++t) r[cell * m + t] = p.mass()[cell] * c[y * m + t];
    }
    const double f = objective.value_and_gradient(r, grad_r);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t x = 0; x < d12; ++x) {
      for (std::size_t y = 0; y < dy; ++y) {
        const std::size_t cell = x * dy + y;
        const double mass = p.mass()[cell];
        if (mass == 0.0) continue;
        for (std::size_t t = 0; t < m; ++t) grad[y * m + t] += mass * grad_r[cell * m + t];
      }
    }
    return f;
  };
  auto project = [m](std::span<double> c) { detail::project_rows_to_simplex(c, m); };

  std::optional<BottleneckSolution> best;
  bool all_monotone = true;
  auto run = [&](std::vector<double> start) {
    auto res = detail::projected_gradient_minimize(fg, project, std::move(start), {});
    all_monotone = all_monotone && monotone(res.trace);
    Channel encoder(p.alphabet(2), t_alphabet, res.x);
    const auto joint = cib_joint(p, encoder);
    const double compression = mutual_information(joint, {2}, {3});
    const double relevance = conditional_mutual_information(joint, {0}, {3}, {1});
    const double value = compression - beta * relevance;
    if (best && !(value < best->objective)) return;
    best = BottleneckSolution{std::move(encoder), beta, compression, relevance, value,
                              std::move(res.trace), true, res.converged, 0, options.seed};
  };

  if (warm_start) run(std::vector<double>(warm_start->rows().begin(), warm_start->rows().end()));
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    detail::Rng rng(options.seed + restart);
    std::vector<double> start;
    start.reserve(dy * m);
    for (std::size_t y = 0; y < dy; ++y) {
      for (auto v : rng.dirichlet(m)) start.push_back(v);
    }
    run(std::move(start));
  }
  if (!best) throw ValidationError("cib_optimize needs at least one restart or a warm start");
  best->traces_monotone = all_monotone;
  best->restarts_run = options.restarts;
  return *best;
}

std::vector<BottleneckSolution> beta_sweep(const JointPMF& p, const std::vector<double>& betas,
                                           BottleneckOptions options) {
  if (!std::is_sorted(betas.begin(), betas.end())) {
    throw ValidationError("betas must be sorted ascending");
  }
  std::vector<BottleneckSolution> out;
  for (double beta : betas) {
    const Channel* warm = out.empty() ? nullptr : &out.back().encoder;
    out.push_back(cib_optimize(p, beta, options, warm));
  }
  return out;
}

}  // namespace infodecomp
