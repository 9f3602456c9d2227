#pragma once

// Independent reference arithmetic for the tests. Nothing here calls into the
// library's entropy code: masses are read cell by cell and summed directly.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "infodecomp/prob.hpp"

namespace testing_support {

using infodecomp::JointPMF;
using infodecomp::VarList;

inline double plogp(double v) { return v > 0.0 ? -v * std::log2(v) : 0.0; }
inline double h2(double a) { return plogp(a) + plogp(1.0 - a); }

// H of the listed variables, by summing masses keyed on the selected indices.
inline double ref_entropy(const JointPMF& p, const VarList& vars) {
  std::map<std::vector<std::size_t>, double> acc;
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    const auto idx = p.unflatten(flat);
    std::vector<std::size_t> key;
    for (auto v : vars) key.push_back(idx[v]);
    acc[key] += p.mass()[flat];
  }
  double h = 0.0;
  for (const auto& [k, m] : acc) h += plogp(m);
  return h;
}

inline VarList concat(VarList a, const VarList& b) {
  for (auto v : b) a.push_back(v);
  return a;
}

inline double ref_mi(const JointPMF& p, const VarList& a, const VarList& b) {
  return ref_entropy(p, a) + ref_entropy(p, b) - ref_entropy(p, concat(a, b));
}

inline double ref_cmi(const JointPMF& p, const VarList& a, const VarList& b, const VarList& c) {
  return ref_entropy(p, concat(a, c)) + ref_entropy(p, concat(b, c)) - ref_entropy(p, c) -
         ref_entropy(p, concat(concat(a, b), c));
}

// Dirichlet(1,...,1) masses from an engine independent of the library's.
inline std::vector<double> dirichlet(std::mt19937& rng, std::size_t n) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = g(rng));
  for (auto& x : v) x /= s;
  return v;
}

inline JointPMF random_pmf(std::uint32_t seed, const std::vector<std::size_t>& shape) {
  std::mt19937 rng(seed);
  std::vector<infodecomp::Alphabet> alphabets;
  std::size_t n = 1;
  for (auto d : shape) {
    alphabets.push_back(infodecomp::Alphabet::range(d));
    n *= d;
  }
  return JointPMF(std::move(alphabets), dirichlet(rng, n));
}

inline JointPMF bits(std::size_t arity, std::vector<double> mass) {
  return JointPMF(std::vector<infodecomp::Alphabet>(arity, infodecomp::Alphabet::range(2)),
                  std::move(mass));
}

}  // namespace testing_support
