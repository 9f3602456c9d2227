#pragma once

// Finite-alphabet probability: joint pmfs, marginals, conditionals and the
// Shannon quantities built from them. Every quantity is reported in bits.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace infodecomp {

inline constexpr double kDefaultSupportEps = 1e-12;
inline constexpr double kNormalizationTol = 1e-10;
inline constexpr double kNegativeInfoTol = 1e-9;
inline constexpr std::size_t kMaxAlphabetSize = 64;
inline constexpr std::size_t kMaxArity = 4;

/// Input that breaks a documented precondition (bad pmf, wrong arity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered set of distinct, non-empty symbol labels.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  /// Labels "0", "1", ..., "n-1".
  static Alphabet range(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> labels_;
};

using VarList = std::vector<std::size_t>;

/// Dense joint pmf over the product of up to four finite alphabets.
/// Storage is row-major: the last variable varies fastest.
class JointPMF {
 public:
  JointPMF(std::vector<Alphabet> alphabets, std::vector<double> mass,
           double support_eps = kDefaultSupportEps);

  std::size_t arity() const { return alphabets_.size(); }
  std::size_t size() const { return mass_.size(); }
  std::size_t dim(std::size_t var) const { return alphabets_.at(var).size(); }
  std::vector<std::size_t> shape() const;
  const Alphabet& alphabet(std::size_t var) const { return alphabets_.at(var); }
  const std::vector<Alphabet>& alphabets() const { return alphabets_; }
  std::span<const double> mass() const { return mass_; }
  double support_eps() const { return support_eps_; }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  double at(std::span<const std::size_t> index) const { return mass_[flat_index(index)]; }
  double at(std::initializer_list<std::size_t> index) const {
    return at(std::span<const std::size_t>(index.begin(), index.size()));
  }
  bool in_support(std::size_t flat) const { return mass_[flat] > support_eps_; }

  bool operator==(const JointPMF&) const = default;

 private:
  std::vector<Alphabet> alphabets_;
  std::vector<double> mass_;
  std::vector<std::size_t> strides_;
  double support_eps_;
};

/// Row-stochastic matrix p(out | in).
class Channel {
 public:
  Channel(Alphabet input, Alphabet output, std::vector<double> rows);

  static Channel identity(const Alphabet& a);
  static Channel constant(const Alphabet& input, const Alphabet& output,
                          std::span<const double> distribution);

  const Alphabet& input() const { return input_; }
  const Alphabet& output() const { return output_; }
  std::span<const double> rows() const { return rows_; }
  double operator()(std::size_t in, std::size_t out) const {
    return rows_[in * output_.size() + out];
  }

  bool operator==(const Channel&) const = default;

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<double> rows_;
};

// Construction helpers -------------------------------------------------------

/// Product of independent one-variable marginals.
JointPMF product(std::span<const JointPMF> factors);
JointPMF uniform(std::vector<Alphabet> alphabets);

/// Sums out every variable not in `keep`; result variables follow `keep` order,
/// so a full `keep` list is a permutation.
JointPMF marginalize(const JointPMF& p, const VarList& keep);
JointPMF permute(const JointPMF& p, const VarList& order);

/// Slice at variable `on` = `value`, renormalized; the conditioned variable is removed.
JointPMF condition(const JointPMF& p, std::size_t on, std::size_t value);
JointPMF condition(const JointPMF& p, std::size_t on, std::string_view value);

/// Replaces the variables in `group` by one variable over their product; the merged
/// variable is appended after the remaining ones. Labels are joined with '.'.
JointPMF merge_variables(const JointPMF& p, const VarList& group);

/// Appends a variable T drawn from `c` given the (flattened) values of `inputs`.
JointPMF extend_with_channel(const JointPMF& p, const VarList& inputs, const Channel& c);

/// Replaces variable `var` by the output of `c` applied to it.
JointPMF apply_channel(const JointPMF& p, std::size_t var, const Channel& c);

/// Largest absolute cellwise difference; shapes must agree.
double max_abs_difference(const JointPMF& a, const JointPMF& b);

// Shannon quantities ---------------------------------------------------------

/// Maps tiny negative information values to 0; throws std::logic_error below -1e-9.
double clamp_information(double value);

double entropy(std::span<const double> distribution);
/// H of a one-variable pmf.
double entropy(const JointPMF& p);
/// H of the listed variables (joint entropy when the list holds several).
double entropy(const JointPMF& p, const VarList& vars);
double joint_entropy(const JointPMF& p);
/// H(A | B).
double conditional_entropy(const JointPMF& p, const VarList& a, const VarList& b);

/// I(X;Y) of a two-variable pmf.
double mutual_information(const JointPMF& p);
double mutual_information(const JointPMF& p, const VarList& a, const VarList& b);

/// I(A;B|C) of a three-variable pmf (A, B, C in that order).
double conditional_mutual_information(const JointPMF& p);
double conditional_mutual_information(const JointPMF& p, const VarList& a, const VarList& b,
                                      const VarList& c);

}  // namespace infodecomp
