#include "infodecomp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>

namespace infodecomp::oracle {

namespace {

constexpr int kZoomRounds = 3;
constexpr double kZoomFactor = 5.0;

double plogp(double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; }
double h2(double a) { return plogp(a) + plogp(1.0 - a); }

double entropy_of(std::span<const double> v) {
  double h = 0.0;
  for (double x : v) h += plogp(x);
  return h;
}

struct Box {
  std::vector<double> lo, hi;
};

using Objective = std::function<std::optional<double>(const std::vector<double>&)>;

std::vector<double> axis(double lo, double hi, double step) {
  std::vector<double> pts;
  if (hi < lo) return pts;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) pts.push_back(lo + static_cast<double>(k) * step);
  if (hi - pts.back() > 1e-12) pts.push_back(hi);
  return pts;
}

void scan(const Objective& f, const Box& box, double step, GridResult& best) {
  const std::size_t d = box.lo.size();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t i = 0; i < d; ++i) {
    axes[i] = axis(box.lo[i], box.hi[i], step);
    if (axes[i].empty()) return;
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i] = axes[i][idx[i]];
    ++best.evaluations;
    if (auto v = f(x); v && *v < best.value) {
      best.value = *v;
      best.point = x;
    }
    std::size_t i = d;
    while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
    if (i == 0) return;
  }
}

GridResult grid_minimize(const Objective& f, const Box& box, double resolution) {
  if (!(resolution > 0.0)) throw ValidationError("grid resolution must be positive");
  GridResult best{std::numeric_limits<double>::infinity(), {}, 0};
  scan(f, box, resolution, best);
  double step = resolution;
  for (int round = 0; round < kZoomRounds && !best.point.empty(); ++round) {
    Box local = box;
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
      local.lo[i] = std::max(box.lo[i], best.point[i] - 2.0 * step);
      local.hi[i] = std::min(box.hi[i], best.point[i] + 2.0 * step);
    }
    step /= kZoomFactor;
    scan(f, local, step, best);
  }
  return best;
}

void require_shape(const JointPMF& p, std::vector<std::size_t> shape, const char* what) {
  bool ok = p.arity() == shape.size();
  for (std::size_t i = 0; ok && i < shape.size(); ++i) ok = shape[i] == 0 || p.dim(i) == shape[i];
  if (!ok) throw ValidationError(std::string(what) + ": unsupported shape");
}

// Rounding slack for parameters derived from the marginal constraints.
bool unit(double& v) {
  if (v < -1e-12 || v > 1.0 + 1e-12) return false;
  v = std::clamp(v, 0.0, 1.0);
  return true;
}

}  // namespace

GridResult wyner_grid(const JointPMF& p, double resolution) {
  require_shape(p, {2, 2}, "wyner_grid");
  const auto& m = p.mass();
  const double hxy = entropy_of(m);
  const double px0 = m[0] + m[1];
  const double py0 = m[0] + m[2];
  Objective f = [&](const std::vector<double>& x) -> std::optional<double> {
    const double pi = x[0];
    double a0 = x[1];
    if (pi <= 0.0 || pi >= 1.0) return std::nullopt;
    double a1 = (px0 - pi * a0) / (1.0 - pi);
    if (!unit(a1) || std::abs(a0 - a1) < 1e-12) return std::nullopt;
    double b0 = (m[0] - a1 * py0) / (pi * (a0 - a1));
    double b1 = (py0 - pi * b0) / (1.0 - pi);
    if (!unit(b0) || !unit(b1)) return std::nullopt;
    return hxy - pi * (h2(a0) + h2(b0)) - (1.0 - pi) * (h2(a1) + h2(b1));
  };
  auto best = grid_minimize(f, {{0.0, 0.0}, {1.0, 1.0}}, resolution);
  // A constant Q is feasible exactly for product pmfs.
  if (std::abs(m[0] - px0 * py0) <= 1e-15 && 0.0 < best.value) {
    best.value = 0.0;
    best.point = {1.0, px0};
  }
  return best;
}

GridResult cmin_grid(const JointPMF& p, double resolution) {
  require_shape(p, {2, 2}, "cmin_grid");
  const auto& m = p.mass();
  const double base = 2.0 * entropy_of(m) - h2(m[0] + m[1]) - h2(m[0] + m[2]);
  Objective f = [&](const std::vector<double>& w) -> std::optional<double> {
    double r[2][2][2];
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        r[x][y][0] = m[x * 2 + y] * w[x * 2 + y];
        r[x][y][1] = m[x * 2 + y] * (1.0 - w[x * 2 + y]);
      }
    }
    double hxq = 0.0, hyq = 0.0, hq = 0.0, hxyq = 0.0;
    for (int q = 0; q < 2; ++q) {
      double sq = 0.0;
      for (int a = 0; a < 2; ++a) {
        hxq += plogp(r[a][0][q] + r[a][1][q]);
        hyq += plogp(r[0][a][q] + r[1][a][q]);
        for (int b = 0; b < 2; ++b) {
          hxyq += plogp(r[a][b][q]);
          sq += r[a][b][q];
        }
      }
      hq += plogp(sq);
    }
    return base + 2.0 * hxq + 2.0 * hyq - hq - 3.0 * hxyq;
  };
  return grid_minimize(f, {{0, 0, 0, 0}, {1, 1, 1, 1}}, resolution);
}

GridResult intrinsic_grid(const JointPMF& p, double resolution) {
  require_shape(p, {0, 0, 2}, "intrinsic_grid");
  const std::size_t d1 = p.dim(0), d2 = p.dim(1);
  const auto& m = p.mass();
  Objective f = [&](const std::vector<double>& c) -> std::optional<double> {
    double cmi = 0.0;
    for (int t = 0; t < 2; ++t) {
      std::vector<double> joint(d1 * d2);
      for (std::size_t a = 0; a < d1; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
          const double* cell = &m[(a * d2 + b) * 2];
          const double w0 = t == 0 ? c[0] : 1.0 - c[0];
          const double w1 = t == 0 ? c[1] : 1.0 - c[1];
          joint[a * d2 + b] = cell[0] * w0 + cell[1] * w1;
        }
      }
      std::vector<double> ma(d1, 0.0), mb(d2, 0.0);
      double tot = 0.0;
      for (std::size_t a = 0; a < d1; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
          ma[a] += joint[a * d2 + b];
          mb[b] += joint[a * d2 + b];
          tot += joint[a * d2 + b];
        }
      }
      cmi += entropy_of(ma) + entropy_of(mb) - entropy_of(joint) - plogp(tot);
    }
    return cmi;
  };
  return grid_minimize(f, {{0, 0}, {1, 1}}, resolution);
}

GridResult union_grid(const JointPMF& p, double resolution) {
  require_shape(p, {2, 2, 2}, "union_grid");
  const auto& m = p.mass();
  auto at = [&](int a, int b, int y) { return m[(a * 2 + b) * 2 + y]; };
  double r0[2], c0[2], t[2];
  Box box{{0, 0}, {0, 0}};
  for (int y = 0; y < 2; ++y) {
    r0[y] = at(0, 0, y) + at(0, 1, y);
    c0[y] = at(0, 0, y) + at(1, 0, y);
    t[y] = r0[y] + at(1, 0, y) + at(1, 1, y);
    box.lo[y] = std::max(0.0, r0[y] + c0[y] - t[y]);
    box.hi[y] = std::min(r0[y], c0[y]);
  }
  const double hy = plogp(t[0]) + plogp(t[1]);
  Objective f = [&](const std::vector<double>& s) -> std::optional<double> {
    double q[2][4];
    for (int y = 0; y < 2; ++y) {
      q[y][0] = s[y];
      q[y][1] = std::max(0.0, r0[y] - s[y]);
      q[y][2] = std::max(0.0, c0[y] - s[y]);
      q[y][3] = std::max(0.0, t[y] - r0[y] - c0[y] + s[y]);
    }
    double hx = 0.0, hxy = 0.0;
    for (int k = 0; k < 4; ++k) {
      hx += plogp(q[0][k] + q[1][k]);
      hxy += plogp(q[0][k]) + plogp(q[1][k]);
    }
    return hx + hy - hxy;
  };
  return grid_minimize(f, box, resolution);
}

GridResult conditional_gk_deterministic(const JointPMF& p, std::size_t q_card) {
  if (p.arity() != 3) throw ValidationError("conditional_gk_deterministic expects (Y, X1, X2)");
  const std::size_t dy = p.dim(0), d1 = p.dim(1), d2 = p.dim(2);
  const std::size_t inputs = dy * d2;
  if (q_card < 1 || std::pow(static_cast<double>(q_card), static_cast<double>(inputs)) > 1e6) {
    throw ValidationError("conditional_gk_deterministic: instance too large");
  }
  const auto& m = p.mass();
  GridResult best{-std::numeric_limits<double>::infinity(), {}, 0};
  std::vector<std::size_t> f(inputs, 0);
  // Entropy of the marginal over the variables selected by `keep` (Y, X1, X2, Q).
  auto h = [&](bool ky, bool k1, bool k2, bool kq) {
    std::vector<double> acc(dy * d1 * d2 * q_card, 0.0);
    for (std::size_t y = 0; y < dy; ++y) {
      for (std::size_t a = 0; a < d1; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
          const std::size_t q = f[y * d2 + b];
          const std::size_t key = (((ky ? y : 0) * d1 + (k1 ? a : 0)) * d2 + (k2 ? b : 0)) * q_card +
                                  (kq ? q : 0);
          acc[key] += m[(y * d1 + a) * d2 + b];
        }
      }
    }
    return entropy_of(acc);
  };
  while (true) {
    ++best.evaluations;
    const double hyx = h(true, true, true, false);
    const double hyxq = h(true, true, true, true);
    // I(Y;Q|X1X2)
    const double leak = hyx + h(false, true, true, true) - h(false, true, true, false) - hyxq;
    if (leak <= 1e-9) {
      // I(YX1;Q|X2)
      const double v = hyx + h(false, false, true, true) - h(false, false, true, false) - hyxq;
      if (v > best.value) {
        best.value = v;
        best.point.assign(f.begin(), f.end());
      }
    }
    std::size_t i = inputs;
    while (i > 0 && ++f[i - 1] == q_card) f[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

std::size_t chromatic_number(const CharacteristicGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n > kMaxBruteForceVertices) throw ValidationError("chromatic_number: too many vertices");
  if (n == 0) return 0;
  const auto adj = g.adjacency();
  std::size_t best = n;
  std::vector<std::size_t> rgs(n, 0);
  // Restricted growth strings: rgs[i] <= 1 + max(rgs[0..i-1]).
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (adj[a][b] && rgs[a] == rgs[b]) return;
        }
      }
      best = std::min(best, blocks);
      return;
    }
    for (std::size_t c = 0; c <= blocks; ++c) {
      rgs[i] = c;
      walk(i + 1, std::max(blocks, c + 1));
    }
  };
  walk(0, 0);
  return best;
}

}  // namespace infodecomp::oracle
