#pragma once

// Information elements as partitions of a finite sample space. Join is the
// common refinement, meet the finest common coarsening.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infodecomp {

class SampleSpace {
 public:
  explicit SampleSpace(std::vector<std::string> points,
                       std::optional<std::vector<double>> weights = std::nullopt);

  /// Points labelled by the characters of `labels`, e.g. "0123456789abcdef".
  static std::shared_ptr<const SampleSpace> from_chars(std::string_view labels,
                                                       bool uniform_weights = true);

  std::size_t size() const { return points_.size(); }
  const std::string& label(std::size_t i) const { return points_.at(i); }
  const std::vector<std::string>& labels() const { return points_; }
  std::optional<std::size_t> find(std::string_view label) const;
  bool has_weights() const { return weights_.has_value(); }
  const std::vector<double>& weights() const;
  /// True when every label is one character, so block notation needs no separators.
  bool single_char_labels() const;

  bool operator==(const SampleSpace&) const = default;

 private:
  std::vector<std::string> points_;
  std::optional<std::vector<double>> weights_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

/// Partition in canonical form: blocks numbered by first appearance in point order.
class Partition {
 public:
  Partition(SpacePtr space, std::vector<int> block_of);

  static Partition discrete(SpacePtr space);
  static Partition indiscrete(SpacePtr space);
  /// Block notation such as "01|23|45"; multi-character labels are comma separated.
  static Partition parse(SpacePtr space, std::string_view notation);

  const SampleSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t num_blocks() const { return num_blocks_; }
  int block_of(std::size_t point) const { return block_of_.at(point); }
  const std::vector<int>& block_ids() const { return block_of_; }
  std::vector<std::vector<std::size_t>> blocks() const;
  std::string to_string() const;

  bool operator==(const Partition& other) const;

 private:
  SpacePtr space_;
  std::vector<int> block_of_;
  std::size_t num_blocks_ = 0;
};

/// Parses `label:block` lines (one point per line, '#' comments). The space is
/// built from the labels in order of appearance unless one is supplied.
Partition parse_partition_lines(std::string_view text, SpacePtr space = nullptr);
/// Inverse of parse_partition_lines: one `label:block` line per point, blocks numbered from 0.
std::string format_partition_lines(const Partition& p);

Partition join(const Partition& p, const Partition& q);
Partition meet(const Partition& p, const Partition& q);
/// P is informationally richer than Q: every P-block lies inside a Q-block.
bool is_richer(const Partition& p, const Partition& q);
/// Entropy of the block masses; the space must carry weights.
double partition_entropy(const Partition& p);
/// Equality after discarding zero-weight points.
bool equivalent_on_support(const Partition& p, const Partition& q);

struct DistributivityCheck {
  Partition lhs;  // (Z ∧ Y) ∨ (Z ∧ X)
  Partition rhs;  // Z ∧ (X ∨ Y)
  bool equal;
};
DistributivityCheck check_distributivity(const Partition& x, const Partition& y,
                                         const Partition& z);

/// Visits every partition of an n-point set as a restricted-growth string, in
/// lexicographic order. Returning false from the visitor stops the walk.
void for_each_rgs(std::size_t n, const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace infodecomp
