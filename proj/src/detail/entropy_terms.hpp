#pragma once

// Linear combinations of marginal entropies over a dense tensor, with exact
// gradients. Every information objective in the optimizers is expressed this way.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infodecomp/prob.hpp"

namespace infodecomp::detail {

class EntropyCombination {
 public:
  explicit EntropyCombination(std::vector<std::size_t> shape);

  void add_entropy(double coeff, const VarList& vars);
  /// coeff * I(A;B|C); C may be empty.
  void add_cmi(double coeff, const VarList& a, const VarList& b, const VarList& c = {});

  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& shape() const { return shape_; }

  double value(std::span<const double> r) const;
  /// Overwrites `grad` with d value / d r.
  double value_and_gradient(std::span<const double> r, std::span<double> grad) const;

 private:
  struct Term {
    std::uint32_t mask;
    double coeff;
    std::size_t marginal_size;
    std::vector<std::uint32_t> map;  // flat cell -> marginal cell
  };
  Term& term_for(std::uint32_t mask);

  std::vector<std::size_t> shape_;
  std::size_t size_;
  std::vector<Term> terms_;
};

/// Cellwise index map from the full tensor onto the marginal over `vars` (row-major in `vars`).
std::vector<std::uint32_t> marginal_map(const std::vector<std::size_t>& shape, const VarList& vars,
                                        std::size_t* marginal_size = nullptr);

}  // namespace infodecomp::detail
