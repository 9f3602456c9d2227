#include "infodecomp/zero_error.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace infodecomp {

namespace {

using Adjacency = std::vector<std::vector<bool>>;

std::size_t greedy_clique_size(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::size_t best = n > 0 ? 1 : 0;
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> clique{start};
    for (std::size_t v = 0; v < n; ++v) {
      if (v == start) continue;
      const bool all = std::all_of(clique.begin(), clique.end(), [&](auto u) { return adj[u][v]; });
      if (all) clique.push_back(v);
    }
    best = std::max(best, clique.size());
  }
  return best;
}

std::vector<std::size_t> greedy_coloring(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> color(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<bool> taken(n + 1, false);
    for (std::size_t u = 0; u < v; ++u) {
      if (adj[u][v]) taken[color[u]] = true;
    }
    while (taken[color[v]]) ++color[v];
  }
  return color;
}

std::size_t count_colors(const std::vector<std::size_t>& color_of) {
  return color_of.empty() ? 0 : *std::max_element(color_of.begin(), color_of.end()) + 1;
}

/// Backtracking over vertices in index order with colors in restricted-growth
/// form, so solutions appear in lexicographic order.
class KColoringSearch {
 public:
  KColoringSearch(const Adjacency& adj, std::size_t k, bool all)
      : adj_(adj), k_(k), all_(all), color_(adj.size(), 0) {}

  std::vector<std::vector<std::size_t>> run() {
    extend(0, 0);
    return found_;
  }

 private:
  bool extend(std::size_t v, std::size_t used) {
    if (v == adj_.size()) {
      found_.push_back(color_);
      return all_;
    }
    const std::size_t limit = std::min(used + 1, k_);
    // Colors still unused must fit on the remaining vertices.
    for (std::size_t c = 0; c < limit; ++c) {
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = !(adj_[u][v] && color_[u] == c);
      if (!ok) continue;
      const std::size_t next_used = std::max(used, c + 1);
      if (k_ - next_used > adj_.size() - v - 1) continue;
      color_[v] = c;
      if (!extend(v + 1, next_used)) return false;
    }
    return true;
  }

  const Adjacency& adj_;
  std::size_t k_;
  bool all_;
  std::vector<std::size_t> color_;
  std::vector<std::vector<std::size_t>> found_;
};

std::string block_label(const Partition& p, const std::vector<std::size_t>& points) {
  std::string out;
  const bool compact = p.space().single_char_labels();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !compact) out += ',';
    out += p.space().label(points[i]);
  }
  return out;
}

Partition lift(const Partition& x, const std::vector<std::size_t>& color_of_block) {
  std::vector<int> block(x.space().size());
  for (std::size_t w = 0; w < block.size(); ++w) {
    block[w] = static_cast<int>(color_of_block[static_cast<std::size_t>(x.block_of(w))]);
  }
  return Partition(x.space_ptr(), std::move(block));
}

Partition partition_of_symbols(const JointPMF& p, const std::vector<std::size_t>& color_of) {
  const auto px = marginalize(p, {0});
  auto space = std::make_shared<const SampleSpace>(
      p.alphabet(0).labels(), std::vector<double>(px.mass().begin(), px.mass().end()));
  std::vector<int> block(color_of.begin(), color_of.end());
  return Partition(std::move(space), std::move(block));
}

/// P ∨ Y = X ∨ Y over the support cells of p, with P = color(X).
void verify_pmf_join(const JointPMF& p, const std::vector<std::size_t>& color_of) {
  std::vector<std::string> cells;
  std::vector<int> xs, ys, ps;
  for (std::size_t cell = 0; cell < p.size(); ++cell) {
    if (!p.in_support(cell)) continue;
    const auto idx = p.unflatten(cell);
    cells.push_back(p.alphabet(0).label(idx[0]) + "/" + p.alphabet(1).label(idx[1]));
    xs.push_back(static_cast<int>(idx[0]));
    ys.push_back(static_cast<int>(idx[1]));
    ps.push_back(static_cast<int>(color_of[idx[0]]));
  }
  auto space = std::make_shared<const SampleSpace>(std::move(cells));
  const Partition px(space, xs), py(space, ys), pp(space, ps);
  if (!(join(pp, py) == join(px, py))) {
    throw std::logic_error("coloring does not recover X from (P, Y)");
  }
}

}  // namespace

bool CharacteristicGraph::adjacent(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::vector<std::vector<bool>> CharacteristicGraph::adjacency() const {
  const std::size_t n = vertices.size();
  Adjacency adj(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) adj[a][b] = adj[b][a] = true;
  return adj;
}

CharacteristicGraph characteristic_graph(const JointPMF& p) {
  if (p.arity() != 2) throw ValidationError("characteristic_graph expects a two-variable pmf");
  CharacteristicGraph g{p.alphabet(0), {}};
  const std::size_t nx = p.dim(0);
  for (std::size_t a = 0; a < nx; ++a) {
    for (std::size_t b = a + 1; b < nx; ++b) {
      for (std::size_t y = 0; y < p.dim(1); ++y) {
        if (p.at({a, y}) > p.support_eps() && p.at({b, y}) > p.support_eps()) {
          g.edges.emplace_back(a, b);
          break;
        }
      }
    }
  }
  return g;
}

bool is_proper_coloring(const CharacteristicGraph& g, const std::vector<std::size_t>& color_of) {
  if (color_of.size() != g.vertices.size()) return false;
  return std::none_of(g.edges.begin(), g.edges.end(),
                      [&](const auto& e) { return color_of[e.first] == color_of[e.second]; });
}

ColoringResult chromatic_color(const CharacteristicGraph& g, ColoringOptions options) {
  const auto adj = g.adjacency();
  ColoringResult result;
  if (options.greedy) {
    result.coloring.color_of = greedy_coloring(adj);
    result.coloring.num_colors = count_colors(result.coloring.color_of);
    result.bound_kind = BoundKind::upper;
    return result;
  }
  if (adj.size() > kMaxExactColoringVertices) {
    throw ValidationError("exact coloring is limited to " +
                          std::to_string(kMaxExactColoringVertices) +
                          " vertices; use greedy mode for an upper bound");
  }
  const std::size_t lower = greedy_clique_size(adj);
  const std::size_t upper = count_colors(greedy_coloring(adj));
  for (std::size_t k = std::max<std::size_t>(lower, 1); k <= upper; ++k) {
    auto found = KColoringSearch(adj, k, options.enumerate_all).run();
    if (found.empty()) continue;
    result.coloring = {found.front(), k};
    if (options.enumerate_all) {
      for (auto& c : found) result.all_minimal.push_back({std::move(c), k});
    }
    return result;
  }
  throw std::logic_error("greedy coloring bound not reached by exact search");
}

WitsenhausenResult witsenhausen_private(const JointPMF& p, bool enumerate_all) {
  const auto g = characteristic_graph(p);
  const auto colors = chromatic_color(g, {enumerate_all, false});
  verify_pmf_join(p, colors.coloring.color_of);
  WitsenhausenResult out{partition_of_symbols(p, colors.coloring.color_of), {},
                         colors.coloring.num_colors};
  for (const auto& c : colors.all_minimal) {
    verify_pmf_join(p, c.color_of);
    out.all_minimal.push_back(partition_of_symbols(p, c.color_of));
  }
  return out;
}

JointPMF partition_pair_pmf(const Partition& x, const Partition& y) {
  if (!(x.space() == y.space())) throw ValidationError("partitions live on different spaces");
  const auto xb = x.blocks();
  const auto yb = y.blocks();
  std::vector<std::string> xl, yl;
  for (const auto& b : xb) xl.push_back(block_label(x, b));
  for (const auto& b : yb) yl.push_back(block_label(y, b));
  const std::size_t n = x.space().size();
  std::vector<double> mass(xb.size() * yb.size(), 0.0);
  for (std::size_t w = 0; w < n; ++w) {
    const double m = x.space().has_weights() ? x.space().weights()[w] : 1.0 / static_cast<double>(n);
    mass[static_cast<std::size_t>(x.block_of(w)) * yb.size() +
         static_cast<std::size_t>(y.block_of(w))] += m;
  }
  return JointPMF({Alphabet(std::move(xl)), Alphabet(std::move(yl))}, std::move(mass));
}

WitsenhausenResult witsenhausen_private(const Partition& x, const Partition& y,
                                        bool enumerate_all) {
  const auto p = partition_pair_pmf(x, y);
  const auto g = characteristic_graph(p);
  const auto colors = chromatic_color(g, {enumerate_all, false});
  const auto xy = join(x, y);
  auto lifted = [&](const Coloring& c) {
    auto part = lift(x, c.color_of);
    if (!equivalent_on_support(join(part, y), xy)) {
      throw std::logic_error("coloring does not recover X from (P, Y)");
    }
    return part;
  };
  WitsenhausenResult out{lifted(colors.coloring), {}, colors.coloring.num_colors};
  for (const auto& c : colors.all_minimal) out.all_minimal.push_back(lifted(c));
  return out;
}

std::vector<Partition> hexner_yo_private(const Partition& x, const Partition& y) {
  if (!(x.space() == y.space())) throw ValidationError("partitions live on different spaces");
  const std::size_t n = x.space().size();
  if (n > kMaxHexnerYoPoints) {
    throw ValidationError("Hexner-Yo enumeration is limited to " +
                          std::to_string(kMaxHexnerYoPoints) + " points");
  }
  const Partition common = meet(x, y);
  std::vector<Partition> best;
  std::size_t best_blocks = n + 1;
  for_each_rgs(n, [&](const std::vector<int>& rgs) {
    const auto blocks = static_cast<std::size_t>(*std::max_element(rgs.begin(), rgs.end()) + 1);
    if (blocks > best_blocks) return true;
    Partition candidate(x.space_ptr(), rgs);
    if (!(join(candidate, common) == x)) return true;
    if (blocks < best_blocks) {
      best.clear();
      best_blocks = blocks;
    }
    best.push_back(std::move(candidate));
    return true;
  });
  return best;
}

}  // namespace infodecomp
