#pragma once

// Zero-error private information: what X must add to Y so that the pair is
// recovered exactly. Witsenhausen's version colors the confusability graph of
// X; the Hexner–Yo version searches the partition lattice directly.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "infodecomp/lattice.hpp"
#include "infodecomp/optim.hpp"
#include "infodecomp/prob.hpp"

namespace infodecomp {

inline constexpr std::size_t kMaxExactColoringVertices = 24;
inline constexpr std::size_t kMaxHexnerYoPoints = 10;

struct CharacteristicGraph {
  Alphabet vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted

  bool adjacent(std::size_t a, std::size_t b) const;
  std::vector<std::vector<bool>> adjacency() const;
};

/// x1 ~ x2 iff some y has positive mass with both.
CharacteristicGraph characteristic_graph(const JointPMF& p);

struct Coloring {
  std::vector<std::size_t> color_of;
  std::size_t num_colors = 0;

  bool operator==(const Coloring&) const = default;
};

bool is_proper_coloring(const CharacteristicGraph& g, const std::vector<std::size_t>& color_of);

struct ColoringOptions {
  /// Also list every optimal coloring up to relabelling (as canonical color sequences).
  bool enumerate_all = false;
  /// Greedy coloring instead of the exact search; the color count is then an upper bound.
  bool greedy = false;
};

struct ColoringResult {
  Coloring coloring;  // lexicographically smallest optimal coloring in exact mode
  std::vector<Coloring> all_minimal;
  BoundKind bound_kind = BoundKind::exact;
};

ColoringResult chromatic_color(const CharacteristicGraph& g, ColoringOptions options = {});

struct WitsenhausenResult {
  Partition partition;
  std::vector<Partition> all_minimal;
  std::size_t num_colors;
};

/// Partition of the X alphabet into color classes of an optimal coloring. The
/// join of the result with Y is checked against X ∨ Y on the support.
WitsenhausenResult witsenhausen_private(const JointPMF& p, bool enumerate_all = true);

/// Same construction for two partitions of one sample space: the X and Y blocks
/// play the symbols and the result is lifted back to the sample space. Points of
/// zero weight (when the space carries weights) are off the support.
WitsenhausenResult witsenhausen_private(const Partition& x, const Partition& y,
                                        bool enumerate_all = true);

/// The pmf over (X blocks, Y blocks) induced by two partitions; uniform over the
/// points unless the space carries weights.
JointPMF partition_pair_pmf(const Partition& x, const Partition& y);

/// Every partition P with P ∨ (X ∧ Y) = X and the fewest blocks, in
/// restricted-growth order.
std::vector<Partition> hexner_yo_private(const Partition& x, const Partition& y);

}  // namespace infodecomp
