#include "detail/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace infodecomp::detail {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool window_converged(const std::vector<double>& trace, const DescentOptions& o) {
  if (trace.size() <= o.window) return false;
  return trace[trace.size() - 1 - o.window] - trace.back() < o.f_tol;
}

}  // namespace

Alphabet indexed_alphabet(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
  return Alphabet(std::move(labels));
}

double Rng::exponential() {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  return -std::log(u);
}

std::vector<double> Rng::dirichlet(std::size_t n) {
  std::vector<double> x(n);
  double s = 0.0;
  for (auto& v : x) s += (v = exponential());
  for (auto& v : x) v /= s;
  return x;
}

std::vector<double> Rng::simplex_logits(std::size_t n) {
  std::vector<double> x(n);
  for (auto& v : x) v = std::log(exponential());
  return x;
}

void softmax_rows(std::span<const double> theta, std::size_t cols, std::span<double> out) {
  for (std::size_t r = 0; r * cols < theta.size(); ++r) {
    const auto row = theta.subspan(r * cols, cols);
    const double mx = *std::max_element(row.begin(), row.end());
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += (out[r * cols + c] = std::exp(row[c] - mx));
    for (std::size_t c = 0; c < cols; ++c) out[r * cols + c] /= s;
  }
}

void softmax_rows_backward(std::span<const double> s, std::span<const double> grad_s,
                           std::size_t cols, std::span<double> grad_theta) {
  for (std::size_t r = 0; r * cols < s.size(); ++r) {
    double inner = 0.0;
    for (std::size_t c = 0; c < cols; ++c) inner += s[r * cols + c] * grad_s[r * cols + c];
    for (std::size_t c = 0; c < cols; ++c) {
      grad_theta[r * cols + c] += s[r * cols + c] * (grad_s[r * cols + c] - inner);
    }
  }
}

void project_rows_to_simplex(std::span<double> x, std::size_t cols) {
  std::vector<double> sorted(cols);
  for (std::size_t r = 0; r * cols < x.size(); ++r) {
    auto row = x.subspan(r * cols, cols);
    std::copy(row.begin(), row.end(), sorted.begin());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      cumulative += sorted[k];
      const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
      if (sorted[k] - t > 0.0) tau = t;
    }
    for (auto& v : row) v = std::max(v - tau, 0.0);
  }
}

DescentResult lbfgs_minimize(const ValueGrad& fg, std::vector<double> x0,
                             const DescentOptions& options) {
  const std::size_t n = x0.size();
  DescentResult res;
  res.x = std::move(x0);
  std::vector<double> g(n), gn(n), xn(n), d(n);
  res.f = fg(res.x, g);
  res.trace.push_back(res.f);
  std::deque<std::vector<double>> S, Y;
  std::deque<double> rho;

  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    if (max_abs(g) < 1e-14) {
      res.converged = true;
      break;
    }
    // Two-loop recursion.
    std::vector<double> q = g;
    std::vector<double> alpha(S.size());
    for (std::size_t i = S.size(); i-- > 0;) {
      alpha[i] = rho[i] * dot(S[i], q);
      for (std::size_t k = 0; k < n; ++k) q[k] -= alpha[i] * Y[i][k];
    }
    double gamma = 1.0;
    if (!S.empty()) {
      gamma = dot(S.back(), Y.back()) / dot(Y.back(), Y.back());
    } else {
      gamma = std::min(1.0, 1.0 / std::max(max_abs(g), 1e-300));
    }
    for (auto& v : q) v *= gamma;
    for (std::size_t i = 0; i < S.size(); ++i) {
      const double beta = rho[i] * dot(Y[i], q);
      for (std::size_t k = 0; k < n; ++k) q[k] += S[i][k] * (alpha[i] - beta);
    }
    for (std::size_t k = 0; k < n; ++k) d[k] = -q[k];
    double gd = dot(g, d);
    if (!(gd < 0.0)) {
      S.clear();
      Y.clear();
      rho.clear();
      const double scale = std::min(1.0, 1.0 / max_abs(g));
      for (std::size_t k = 0; k < n; ++k) d[k] = -g[k] * scale;
      gd = dot(g, d);
    }

    double step = 1.0;
    bool accepted = false;
    double fn = 0.0;
    for (int ls = 0; ls < kMaxBacktracks; ++ls) {
      for (std::size_t k = 0; k < n; ++k) xn[k] = res.x[k] + step * d[k];
      fn = fg(xn, gn);
      if (std::isfinite(fn) && fn <= res.f + kArmijo * step * gd) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!S.empty()) {
        S.clear();
        Y.clear();
        rho.clear();
        continue;
      }
      res.converged = true;  // no representable descent step remains
      break;
    }
    std::vector<double> s(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = xn[k] - res.x[k];
      y[k] = gn[k] - g[k];
    }
    const double sy = dot(s, y);
    if (sy > 1e-14 * std::sqrt(dot(s, s) * dot(y, y))) {
      S.push_back(std::move(s));
      Y.push_back(std::move(y));
      rho.push_back(1.0 / sy);
      if (S.size() > options.memory) {
        S.pop_front();
        Y.pop_front();
        rho.pop_front();
      }
    }
    res.x.swap(xn);
    g.swap(gn);
    res.f = fn;
    res.trace.push_back(fn);
    if (window_converged(res.trace, options)) {
      res.converged = true;
      ++res.iterations;
      break;
    }
  }
  return res;
}

DescentResult projected_gradient_minimize(const ValueGrad& fg, const Projector& project,
                                          std::vector<double> x0, const DescentOptions& options) {
  const std::size_t n = x0.size();
  DescentResult res;
  res.x = std::move(x0);
  project(res.x);
  std::vector<double> g(n), gn(n), xn(n), diff(n);
  res.f = fg(res.x, g);
  res.trace.push_back(res.f);
  double eta = 1.0;

  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    bool accepted = false;
    double fn = 0.0;
    for (int ls = 0; ls < kMaxBacktracks; ++ls) {
      for (std::size_t k = 0; k < n; ++k) xn[k] = res.x[k] - eta * g[k];
      project(xn);
      for (std::size_t k = 0; k < n; ++k) diff[k] = xn[k] - res.x[k];
      if (max_abs(diff) < 1e-15) break;
      fn = fg(xn, gn);
      if (std::isfinite(fn) && fn <= res.f + kArmijo * dot(g, diff)) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // stationary, or no descent representable at this precision
      break;
    }
    res.x.swap(xn);
    g.swap(gn);
    res.f = fn;
    res.trace.push_back(fn);
    eta = std::min(eta * 2.0, 1e6);
    if (window_converged(res.trace, options)) {
      res.converged = true;
      ++res.iterations;
      break;
    }
  }
  return res;
}

}  // namespace infodecomp::detail
