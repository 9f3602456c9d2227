#include "infodecomp/common_info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/solvers.hpp"

namespace infodecomp {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

void require_arity(const JointPMF& p, std::size_t arity, const char* what) {
  if (p.arity() != arity) {
    throw ValidationError(std::string(what) + " expects a " + std::to_string(arity) +
                          "-variable pmf, got " + std::to_string(p.arity()));
  }
}

}  // namespace

bool BipartiteGraph::has_edge(std::size_t x, std::size_t y) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(x, y));
}

BipartiteGraph bipartite_graph(const JointPMF& p) {
  require_arity(p, 2, "bipartite_graph");
  BipartiteGraph g{p.alphabet(0), p.alphabet(1), {}};
  for (std::size_t x = 0; x < p.dim(0); ++x) {
    for (std::size_t y = 0; y < p.dim(1); ++y) {
      if (p.at({x, y}) > p.support_eps()) g.edges.emplace_back(x, y);
    }
  }
  return g;
}

std::vector<double> MDCDecomposition::masses() const {
  std::vector<double> m;
  m.reserve(components.size());
  for (const auto& c : components) m.push_back(c.mass);
  return m;
}

MDCDecomposition mdc_decompose(const BipartiteGraph& g, const JointPMF& p) {
  require_arity(p, 2, "mdc_decompose");
  const std::size_t nx = g.left.size();
  const std::size_t ny = g.right.size();
  if (p.dim(0) != nx || p.dim(1) != ny) throw ValidationError("graph and pmf shapes differ");

  UnionFind uf(nx + ny);
  std::vector<bool> x_used(nx, false), y_used(ny, false);
  for (auto [x, y] : g.edges) {
    uf.unite(x, nx + y);
    x_used[x] = y_used[y] = true;
  }

  MDCDecomposition d;
  d.component_of_x.assign(nx, -1);
  d.component_of_y.assign(ny, -1);
  std::vector<int> id_of_root(nx + ny, -1);
  for (std::size_t x = 0; x < nx; ++x) {
    if (!x_used[x]) continue;
    auto& id = id_of_root[uf.find(x)];
    if (id < 0) {
      id = static_cast<int>(d.components.size());
      d.components.emplace_back();
    }
    d.component_of_x[x] = id;
    d.components[id].xs.push_back(x);
  }
  for (std::size_t y = 0; y < ny; ++y) {
    if (!y_used[y]) continue;
    const int id = id_of_root[uf.find(nx + y)];
    d.component_of_y[y] = id;
    d.components[id].ys.push_back(y);
  }
  for (auto& c : d.components) {
    for (auto x : c.xs) {
      for (auto y : c.ys) c.mass += p.at({x, y});
    }
  }
  return d;
}

MDCDecomposition mdc_decompose(const JointPMF& p) { return mdc_decompose(bipartite_graph(p), p); }

CommonRV common_rv(const JointPMF& p) {
  const auto d = mdc_decompose(p);
  return {d.component_of_x, d.component_of_y, d.size()};
}

JointPMF with_common_rv(const JointPMF& p) {
  const auto c = common_rv(p);
  const std::size_t nq = std::max<std::size_t>(c.num_values, 1);
  std::vector<double> mass(p.size() * nq, 0.0);
  for (std::size_t x = 0; x < p.dim(0); ++x) {
    for (std::size_t y = 0; y < p.dim(1); ++y) {
      // Off-support cells carry at most support_eps; they follow whichever side is known.
      const int q = c.f[x] >= 0 ? c.f[x] : std::max(c.g[y], 0);
      mass[(x * p.dim(1) + y) * nq + static_cast<std::size_t>(q)] = p.at({x, y});
    }
  }
  return JointPMF({p.alphabet(0), p.alphabet(1), detail::indexed_alphabet("q", nq)},
                  std::move(mass), p.support_eps());
}

SupportMeet support_meet(const JointPMF& p, const VarList& vars) {
  const JointPMF m = marginalize(p, vars);
  const std::size_t n = m.size();
  UnionFind uf(n);
  for (std::size_t k = 0; k < m.arity(); ++k) {
    std::vector<std::size_t> first(m.dim(k), n);
    for (std::size_t cell = 0; cell < n; ++cell) {
      if (!m.in_support(cell)) continue;
      const auto v = m.unflatten(cell)[k];
      if (first[v] == n) {
        first[v] = cell;
      } else {
        uf.unite(first[v], cell);
      }
    }
  }
  SupportMeet out;
  out.component_of_cell.assign(n, -1);
  std::vector<int> id_of_root(n, -1);
  for (std::size_t cell = 0; cell < n; ++cell) {
    if (!m.in_support(cell)) continue;
    auto& id = id_of_root[uf.find(cell)];
    if (id < 0) {
      id = static_cast<int>(out.masses.size());
      out.masses.push_back(0.0);
    }
    out.component_of_cell[cell] = id;
    out.masses[id] += m.mass()[cell];
  }
  return out;
}

double gk_common_information(const JointPMF& p) {
  if (p.arity() < 2) throw ValidationError("gk_common_information needs at least two variables");
  VarList all(p.arity());
  std::iota(all.begin(), all.end(), 0);
  auto masses = support_meet(p, all).masses;
  if (masses.size() <= 1) return 0.0;
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  for (double& m : masses) m /= total;
  return clamp_information(entropy(masses));
}

bool is_zic(std::size_t component, const JointPMF& p) {
  const auto d = mdc_decompose(p);
  if (component >= d.size()) throw ValidationError("no such MDC component");
  const auto& c = d.components[component];
  const auto py = marginalize(p, {1});
  std::vector<double> ref;
  for (auto y : c.ys) {
    std::vector<double> cond;
    for (auto x : c.xs) cond.push_back(p.at({x, y}) / py.mass()[y]);
    if (ref.empty()) {
      ref = std::move(cond);
      continue;
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (std::abs(cond[i] - ref[i]) > 1e-9) return false;
    }
  }
  return true;
}

bool is_perfectly_resolvable(const JointPMF& p) {
  const auto d = mdc_decompose(p);
  for (std::size_t c = 0; c < d.size(); ++c) {
    if (!is_zic(c, p)) return false;
  }
  return true;
}

double residual_information(const JointPMF& p) {
  require_arity(p, 2, "residual_information");
  return clamp_information(mutual_information(p) - gk_common_information(p));
}

CIOrderingReport check_ci_ordering(const JointPMF& p, RestartOptions options) {
  if (p.arity() != 2 && p.arity() != 3) {
    throw ValidationError("check_ci_ordering expects two or three variables");
  }
  constexpr double kExactTol = 1e-9;
  constexpr double kBoundTol = 1e-6;
  CIOrderingReport r;
  r.arity = p.arity();
  const JointPMF p12 = p.arity() == 2 ? p : marginalize(p, {0, 1});
  r.gk = gk_common_information(p12);
  r.mi = mutual_information(p12);
  r.wyner_upper = wyner_common_information(p12, {}, options).value;
  if (r.gk > r.mi + kExactTol) r.violations.push_back("C_GK(X1;X2) > I(X1;X2)");
  if (r.mi > r.wyner_upper + kBoundTol) r.violations.push_back("I(X1;X2) > C_W(X1;X2)");

  if (p.arity() == 3) {
    r.gk_all = gk_common_information(p);
    const double i12 = r.mi;
    const double i13 = mutual_information(p, {0}, {2});
    const double i23 = mutual_information(p, {1}, {2});
    r.min_pairwise_mi = std::min({i12, i13, i23});
    r.max_pairwise_mi = std::max({i12, i13, i23});
    r.wyner_all_upper = wyner_common_information(p, {}, options).value;
    if (r.gk_all > r.gk + kExactTol) r.violations.push_back("C_GK(X1;X2;X3) > C_GK(X1;X2)");
    if (r.gk_all > r.min_pairwise_mi + kExactTol) {
      r.violations.push_back("C_GK(X1;X2;X3) > min I(Xi;Xj)");
    }
    if (r.max_pairwise_mi > r.wyner_all_upper + kBoundTol) {
      r.violations.push_back("max I(Xi;Xj) > C_W(X1;X2;X3)");
    }
  }
  r.holds = r.violations.empty();
  return r;
}

}  // namespace infodecomp
