#include "infodecomp/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace infodecomp {

namespace {

std::vector<std::size_t> strides_for(const std::vector<Alphabet>& alphabets) {
  std::vector<std::size_t> strides(alphabets.size(), 1);
  for (std::size_t i = alphabets.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * alphabets[i].size();
  }
  return strides;
}

std::size_t product_size(const std::vector<Alphabet>& alphabets) {
  std::size_t n = 1;
  for (const auto& a : alphabets) n *= a.size();
  return n;
}

void check_vars(const JointPMF& p, const VarList& vars, bool allow_empty) {
  if (vars.empty() && !allow_empty) throw ValidationError("variable list is empty");
  std::set<std::size_t> seen;
  for (auto v : vars) {
    if (v >= p.arity()) {
      throw ValidationError("variable index " + std::to_string(v) + " out of range for arity " +
                            std::to_string(p.arity()));
    }
    if (!seen.insert(v).second) throw ValidationError("variable listed twice");
  }
}

// Marginal masses of `vars` as a dense vector in row-major order of `vars`.
std::vector<double> marginal_masses(const JointPMF& p, const VarList& vars) {
  std::vector<std::size_t> out_strides(vars.size(), 1);
  std::size_t out_size = 1;
  for (std::size_t i = vars.size(); i-- > 0;) {
    out_strides[i] = out_size;
    out_size *= p.dim(vars[i]);
  }
  std::vector<double> out(out_size, 0.0);
  const auto shape = p.shape();
  std::vector<std::size_t> idx(p.arity(), 0);
  const auto mass = p.mass();
  for (std::size_t flat = 0; flat < mass.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) o += idx[vars[i]] * out_strides[i];
    out[o] += mass[flat];
    for (std::size_t k = idx.size(); k-- > 0;) {
      if (++idx[k] < shape[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

// Nudges one entry so that summing `row` left to right, as marginal_masses does,
// reproduces `target` bit for bit. The last entries are tried first: the final
// addition is the only one whose rounding a single entry fully controls.
void restore_row_sum(std::span<double> row, double target) {
  auto sum = [&] {
    double s = 0.0;
    for (double v : row) s += v;
    return s;
  };
  double s = sum();
  for (std::size_t k = row.size(); k-- > 0 && s != target;) {
    const double original = row[k];
    if (original == 0.0) continue;
    row[k] = std::max(0.0, original + (target - s));
    for (int step = 0; step < 8 && (s = sum()) != target; ++step) {
      row[k] = std::nextafter(row[k], s < target ? INFINITY : 0.0);
    }
    if (s != target) {
      row[k] = original;
      s = sum();
    }
  }
}

VarList union_vars(const VarList& a, const VarList& b) {
  VarList out = a;
  for (auto v : b) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

// Alphabet --------------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("alphabet must contain at least one symbol");
  if (labels_.size() > kMaxAlphabetSize) {
    throw ValidationError("alphabet exceeds " + std::to_string(kMaxAlphabetSize) + " symbols");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw ValidationError("alphabet labels must be non-empty");
    if (!seen.insert(l).second) throw ValidationError("duplicate alphabet label '" + l + "'");
  }
}

Alphabet Alphabet::range(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

std::optional<std::size_t> Alphabet::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Alphabet::index_of(std::string_view label) const {
  auto i = find(label);
  if (!i) throw ValidationError("unknown symbol '" + std::string(label) + "'");
  return *i;
}

// JointPMF --------------------------------------------------------------------

JointPMF::JointPMF(std::vector<Alphabet> alphabets, std::vector<double> mass, double support_eps)
    : alphabets_(std::move(alphabets)), mass_(std::move(mass)), support_eps_(support_eps) {
  if (alphabets_.empty() || alphabets_.size() > kMaxArity) {
    throw ValidationError("pmf arity must be between 1 and " + std::to_string(kMaxArity));
  }
  for (const auto& a : alphabets_) {
    if (a.size() == 0) throw ValidationError("pmf alphabet is empty");
  }
  if (!(support_eps_ > 0.0)) throw ValidationError("support_eps must be positive");
  if (mass_.size() != product_size(alphabets_)) {
    throw ValidationError("pmf mass has " + std::to_string(mass_.size()) + " cells, expected " +
                          std::to_string(product_size(alphabets_)));
  }
  double total = 0.0;
  for (double m : mass_) {
    if (!std::isfinite(m) || m < 0.0) throw ValidationError("pmf entries must be finite and >= 0");
    total += m;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw ValidationError("pmf is not normalized (sum = " + std::to_string(total) + ")");
  }
  strides_ = strides_for(alphabets_);
}

std::vector<std::size_t> JointPMF::shape() const {
  std::vector<std::size_t> s;
  s.reserve(alphabets_.size());
  for (const auto& a : alphabets_) s.push_back(a.size());
  return s;
}

std::size_t JointPMF::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != arity()) throw ValidationError("index arity mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= alphabets_[i].size()) throw ValidationError("index out of range");
    flat += index[i] * strides_[i];
  }
  return flat;
}

std::vector<std::size_t> JointPMF::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(arity());
  for (std::size_t i = 0; i < arity(); ++i) {
    idx[i] = flat / strides_[i];
    flat %= strides_[i];
  }
  return idx;
}

// Channel ---------------------------------------------------------------------

Channel::Channel(Alphabet input, Alphabet output, std::vector<double> rows)
    : input_(std::move(input)), output_(std::move(output)), rows_(std::move(rows)) {
  if (rows_.size() != input_.size() * output_.size()) {
    throw ValidationError("channel matrix has the wrong number of entries");
  }
  for (std::size_t i = 0; i < input_.size(); ++i) {
    double s = 0.0;
    for (std::size_t o = 0; o < output_.size(); ++o) {
      double v = rows_[i * output_.size() + o];
      if (!std::isfinite(v) || v < 0.0) throw ValidationError("channel entries must be >= 0");
      s += v;
    }
    if (std::abs(s - 1.0) > kNormalizationTol) {
      throw ValidationError("channel row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

Channel Channel::identity(const Alphabet& a) {
  std::vector<double> rows(a.size() * a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) rows[i * a.size() + i] = 1.0;
  return Channel(a, a, std::move(rows));
}

Channel Channel::constant(const Alphabet& input, const Alphabet& output,
                          std::span<const double> distribution) {
  if (distribution.size() != output.size()) throw ValidationError("distribution size mismatch");
  std::vector<double> rows;
  rows.reserve(input.size() * output.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    rows.insert(rows.end(), distribution.begin(), distribution.end());
  }
  return Channel(input, output, std::move(rows));
}

// Construction ------------------------------------------------------------------

JointPMF product(std::span<const JointPMF> factors) {
  std::vector<Alphabet> alphabets;
  std::vector<double> mass{1.0};
  for (const auto& f : factors) {
    if (f.arity() != 1) throw ValidationError("product expects one-variable factors");
    alphabets.push_back(f.alphabet(0));
    std::vector<double> next;
    next.reserve(mass.size() * f.size());
    for (double m : mass) {
      for (double q : f.mass()) next.push_back(m * q);
    }
    mass = std::move(next);
  }
  return JointPMF(std::move(alphabets), std::move(mass));
}

JointPMF uniform(std::vector<Alphabet> alphabets) {
  const auto n = product_size(alphabets);
  return JointPMF(std::move(alphabets), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointPMF marginalize(const JointPMF& p, const VarList& keep) {
  check_vars(p, keep, false);
  std::vector<Alphabet> alphabets;
  for (auto v : keep) alphabets.push_back(p.alphabet(v));
  return JointPMF(std::move(alphabets), marginal_masses(p, keep), p.support_eps());
}

JointPMF permute(const JointPMF& p, const VarList& order) {
  if (order.size() != p.arity()) throw ValidationError("permutation must list every variable");
  return marginalize(p, order);
}

JointPMF condition(const JointPMF& p, std::size_t on, std::size_t value) {
  if (on >= p.arity()) throw ValidationError("conditioning variable out of range");
  if (p.arity() < 2) throw ValidationError("cannot condition a one-variable pmf");
  if (value >= p.dim(on)) throw ValidationError("conditioning symbol out of range");
  const double event = marginal_masses(p, {on})[value];
  if (!(event > p.support_eps())) throw ValidationError("conditioning event has zero mass");
  std::vector<Alphabet> alphabets;
  VarList rest;
  for (std::size_t v = 0; v < p.arity(); ++v) {
    if (v != on) {
      rest.push_back(v);
      alphabets.push_back(p.alphabet(v));
    }
  }
  std::vector<double> mass;
  mass.reserve(p.size() / p.dim(on));
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    if (p.unflatten(flat)[on] == value) mass.push_back(p.mass()[flat] / event);
  }
  // Renormalize exactly to absorb rounding in the division.
  const double s = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (double& m : mass) m /= s;
  return JointPMF(std::move(alphabets), std::move(mass), p.support_eps());
}

JointPMF condition(const JointPMF& p, std::size_t on, std::string_view value) {
  if (on >= p.arity()) throw ValidationError("conditioning variable out of range");
  return condition(p, on, p.alphabet(on).index_of(value));
}

JointPMF merge_variables(const JointPMF& p, const VarList& group) {
  check_vars(p, group, false);
  VarList order;
  for (std::size_t v = 0; v < p.arity(); ++v) {
    if (std::find(group.begin(), group.end(), v) == group.end()) order.push_back(v);
  }
  order.insert(order.end(), group.begin(), group.end());
  const auto mass = marginal_masses(p, order);

  std::vector<std::string> merged{""};
  for (auto v : group) {
    std::vector<std::string> next;
    for (const auto& prefix : merged) {
      for (const auto& l : p.alphabet(v).labels()) {
        next.push_back(prefix.empty() ? l : prefix + "." + l);
      }
    }
    merged = std::move(next);
  }
  std::vector<Alphabet> alphabets;
  for (std::size_t i = 0; i + group.size() < order.size(); ++i) {
    alphabets.push_back(p.alphabet(order[i]));
  }
  alphabets.emplace_back(std::move(merged));
  return JointPMF(std::move(alphabets), mass, p.support_eps());
}

JointPMF extend_with_channel(const JointPMF& p, const VarList& inputs, const Channel& c) {
  check_vars(p, inputs, false);
  std::size_t in_size = 1;
  for (auto v : inputs) in_size *= p.dim(v);
  if (c.input().size() != in_size) throw ValidationError("channel input size mismatch");
  const std::size_t out = c.output().size();
  std::vector<double> mass(p.size() * out, 0.0);
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    const auto idx = p.unflatten(flat);
    std::size_t in = 0;
    for (auto v : inputs) in = in * p.dim(v) + idx[v];
    double* row = &mass[flat * out];
    for (std::size_t t = 0; t < out; ++t) row[t] = p.mass()[flat] * c(in, t);
    restore_row_sum(std::span(row, out), p.mass()[flat]);
  }
  auto alphabets = p.alphabets();
  alphabets.push_back(c.output());
  return JointPMF(std::move(alphabets), std::move(mass), p.support_eps());
}

JointPMF apply_channel(const JointPMF& p, std::size_t var, const Channel& c) {
  if (var >= p.arity()) throw ValidationError("channel variable out of range");
  auto extended = extend_with_channel(p, {var}, c);
  VarList keep;
  for (std::size_t v = 0; v < p.arity(); ++v) keep.push_back(v == var ? p.arity() : v);
  return marginalize(extended, keep);
}

double max_abs_difference(const JointPMF& a, const JointPMF& b) {
  if (a.shape() != b.shape()) throw ValidationError("pmf shapes differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.mass()[i] - b.mass()[i]));
  return d;
}

// Shannon quantities ------------------------------------------------------------

double clamp_information(double value) {
  if (value >= 0.0) return value;
  if (value >= -kNegativeInfoTol) return 0.0;
  throw std::logic_error("information quantity is negative beyond tolerance: " +
                         std::to_string(value));
}

double entropy(std::span<const double> distribution) {
  double h = 0.0;
  for (double q : distribution) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return std::max(h, 0.0);
}

double entropy(const JointPMF& p) {
  if (p.arity() != 1) throw ValidationError("entropy expects a one-variable pmf");
  return entropy(p.mass());
}

double entropy(const JointPMF& p, const VarList& vars) {
  check_vars(p, vars, true);
  if (vars.empty()) return 0.0;
  return entropy(marginal_masses(p, vars));
}

double joint_entropy(const JointPMF& p) { return entropy(p.mass()); }

double conditional_entropy(const JointPMF& p, const VarList& a, const VarList& b) {
  return clamp_information(entropy(p, union_vars(a, b)) - entropy(p, b));
}

double mutual_information(const JointPMF& p) {
  if (p.arity() != 2) throw ValidationError("mutual_information expects a two-variable pmf");
  return mutual_information(p, {0}, {1});
}

double mutual_information(const JointPMF& p, const VarList& a, const VarList& b) {
  check_vars(p, union_vars(a, b), false);
  return clamp_information(entropy(p, a) + entropy(p, b) - entropy(p, union_vars(a, b)));
}

double conditional_mutual_information(const JointPMF& p) {
  if (p.arity() != 3) {
    throw ValidationError("conditional_mutual_information expects a three-variable pmf");
  }
  return conditional_mutual_information(p, {0}, {1}, {2});
}

double conditional_mutual_information(const JointPMF& p, const VarList& a, const VarList& b,
                                      const VarList& c) {
  const auto ac = union_vars(a, c);
  const auto bc = union_vars(b, c);
  const auto abc = union_vars(ac, b);
  check_vars(p, abc, false);
  return clamp_information(entropy(p, ac) + entropy(p, bc) - entropy(p, abc) - entropy(p, c));
}

}  // namespace infodecomp
