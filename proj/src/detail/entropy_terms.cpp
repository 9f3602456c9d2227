#include "detail/entropy_terms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace infodecomp::detail {

namespace {

// Floor for logarithms inside gradients; values are evaluated exactly.
constexpr double kLogFloor = 1e-30;
constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

std::uint32_t mask_of(const VarList& vars) {
  std::uint32_t m = 0;
  for (auto v : vars) m |= 1u << v;
  return m;
}

VarList vars_of(std::uint32_t mask, std::size_t arity) {
  VarList out;
  for (std::size_t v = 0; v < arity; ++v) {
    if (mask & (1u << v)) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> marginal_map(const std::vector<std::size_t>& shape, const VarList& vars,
                                        std::size_t* marginal_size) {
  std::size_t total = 1;
  for (auto d : shape) total *= d;
  std::vector<std::size_t> out_stride(shape.size(), 0);
  std::size_t msize = 1;
  for (std::size_t i = vars.size(); i-- > 0;) {
    out_stride[vars[i]] = msize;
    msize *= shape[vars[i]];
  }
  std::vector<std::uint32_t> map(total);
  std::vector<std::size_t> idx(shape.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t o = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) o += idx[k] * out_stride[k];
    map[flat] = static_cast<std::uint32_t>(o);
    for (std::size_t k = shape.size(); k-- > 0;) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
  if (marginal_size) *marginal_size = msize;
  return map;
}

EntropyCombination::EntropyCombination(std::vector<std::size_t> shape) : shape_(std::move(shape)) {
  size_ = 1;
  for (auto d : shape_) size_ *= d;
}

EntropyCombination::Term& EntropyCombination::term_for(std::uint32_t mask) {
  for (auto& t : terms_) {
    if (t.mask == mask) return t;
  }
  Term t{mask, 0.0, 0, {}};
  t.map = marginal_map(shape_, vars_of(mask, shape_.size()), &t.marginal_size);
  terms_.push_back(std::move(t));
  return terms_.back();
}

void EntropyCombination::add_entropy(double coeff, const VarList& vars) {
  const auto mask = mask_of(vars);
  if (mask == 0) return;  // H of nothing
  term_for(mask).coeff += coeff;
}

void EntropyCombination::add_cmi(double coeff, const VarList& a, const VarList& b,
                                 const VarList& c) {
  const auto ma = mask_of(a);
  const auto mb = mask_of(b);
  const auto mc = mask_of(c);
  const auto vars = [&](std::uint32_t m) { return vars_of(m, shape_.size()); };
  add_entropy(coeff, vars(ma | mc));
  add_entropy(coeff, vars(mb | mc));
  add_entropy(-coeff, vars(ma | mb | mc));
  add_entropy(-coeff, vars(mc));
}

double EntropyCombination::value(std::span<const double> r) const {
  double total = 0.0;
  std::vector<double> m;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    m.assign(t.marginal_size, 0.0);
    for (std::size_t i = 0; i < size_; ++i) m[t.map[i]] += r[i];
    double h = 0.0;
    for (double q : m) {
      if (q > 0.0) h -= q * std::log2(q);
    }
    total += t.coeff * h;
  }
  return total;
}

double EntropyCombination::value_and_gradient(std::span<const double> r,
                                              std::span<double> grad) const {
  std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0.0;
  std::vector<double> m;
  std::vector<double> dlog;
  for (const auto& t : terms_) {
    if (t.coeff == 0.0) continue;
    m.assign(t.marginal_size, 0.0);
    for (std::size_t i = 0; i < size_; ++i) m[t.map[i]] += r[i];
    double h = 0.0;
    dlog.resize(t.marginal_size);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] > 0.0) h -= m[j] * std::log2(m[j]);
      dlog[j] = -t.coeff * (std::log2(std::max(m[j], kLogFloor)) + kInvLn2);
    }
    total += t.coeff * h;
    for (std::size_t i = 0; i < size_; ++i) grad[i] += dlog[t.map[i]];
  }
  return total;
}

}  // namespace infodecomp::detail
