#include "infodecomp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "infodecomp/prob.hpp"

namespace infodecomp {

namespace {

void check_same_space(const Partition& p, const Partition& q) {
  if (p.space_ptr() != q.space_ptr() && !(p.space() == q.space())) {
    throw ValidationError("partitions are defined over different sample spaces");
  }
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

// SampleSpace -------------------------------------------------------------------

SampleSpace::SampleSpace(std::vector<std::string> points, std::optional<std::vector<double>> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw ValidationError("sample space is empty");
  std::set<std::string_view> seen;
  for (const auto& p : points_) {
    if (p.empty()) throw ValidationError("sample point labels must be non-empty");
    if (p.find_first_of("|,: \t") != std::string::npos) {
      throw ValidationError("sample point label '" + p + "' contains a reserved character");
    }
    if (!seen.insert(p).second) throw ValidationError("duplicate sample point '" + p + "'");
  }
  if (weights_) {
    if (weights_->size() != points_.size()) throw ValidationError("one weight per point required");
    double total = 0.0;
    for (double w : *weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("weights must be >= 0");
      total += w;
    }
    if (std::abs(total - 1.0) > kNormalizationTol) throw ValidationError("weights must sum to 1");
  }
}

SpacePtr SampleSpace::from_chars(std::string_view labels, bool uniform_weights) {
  std::vector<std::string> points;
  for (char c : labels) points.emplace_back(1, c);
  std::optional<std::vector<double>> w;
  if (uniform_weights) w = std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size()));
  return std::make_shared<const SampleSpace>(std::move(points), std::move(w));
}

std::optional<std::size_t> SampleSpace::find(std::string_view label) const {
  auto it = std::find(points_.begin(), points_.end(), label);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

const std::vector<double>& SampleSpace::weights() const {
  if (!weights_) throw ValidationError("sample space has no weights");
  return *weights_;
}

bool SampleSpace::single_char_labels() const {
  return std::all_of(points_.begin(), points_.end(), [](const auto& l) { return l.size() == 1; });
}

// Partition ---------------------------------------------------------------------

Partition::Partition(SpacePtr space, std::vector<int> block_of)
    : space_(std::move(space)), block_of_(std::move(block_of)) {
  if (!space_) throw ValidationError("partition needs a sample space");
  if (block_of_.size() != space_->size()) {
    throw ValidationError("partition must assign every sample point to a block");
  }
  std::map<int, int> relabel;
  for (int& b : block_of_) {
    auto [it, inserted] = relabel.emplace(b, static_cast<int>(relabel.size()));
    b = it->second;
  }
  num_blocks_ = relabel.size();
}

Partition Partition::discrete(SpacePtr space) {
  std::vector<int> ids(space->size());
  std::iota(ids.begin(), ids.end(), 0);
  return Partition(std::move(space), std::move(ids));
}

Partition Partition::indiscrete(SpacePtr space) {
  std::vector<int> ids(space->size(), 0);
  return Partition(std::move(space), std::move(ids));
}

Partition Partition::parse(SpacePtr space, std::string_view notation) {
  if (!space) throw ValidationError("partition needs a sample space");
  std::vector<int> ids(space->size(), -1);
  int block = 0;
  const bool chars = notation.find(',') == std::string_view::npos && space->single_char_labels();
  std::size_t start = 0;
  while (start <= notation.size()) {
    auto bar = notation.find('|', start);
    if (bar == std::string_view::npos) bar = notation.size();
    auto text = notation.substr(start, bar - start);
    std::vector<std::string> members;
    if (chars) {
      for (char c : text) {
        if (c != ' ') members.emplace_back(1, c);
      }
    } else {
      std::size_t s = 0;
      while (s <= text.size()) {
        auto comma = text.find(',', s);
        if (comma == std::string_view::npos) comma = text.size();
        auto m = text.substr(s, comma - s);
        while (!m.empty() && m.front() == ' ') m.remove_prefix(1);
        while (!m.empty() && m.back() == ' ') m.remove_suffix(1);
        if (!m.empty()) members.emplace_back(m);
        s = comma + 1;
      }
    }
    if (members.empty()) throw ValidationError("empty block in '" + std::string(notation) + "'");
    for (const auto& m : members) {
      auto idx = space->find(m);
      if (!idx) throw ValidationError("unknown sample point '" + m + "'");
      if (ids[*idx] != -1) throw ValidationError("sample point '" + m + "' appears twice");
      ids[*idx] = block;
    }
    ++block;
    start = bar + 1;
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == -1) throw ValidationError("sample point '" + space->label(i) + "' is unassigned");
  }
  return Partition(std::move(space), std::move(ids));
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
  std::vector<std::vector<std::size_t>> out(num_blocks_);
  for (std::size_t i = 0; i < block_of_.size(); ++i) out[block_of_[i]].push_back(i);
  return out;
}

std::string Partition::to_string() const {
  const bool chars = space_->single_char_labels();
  std::string s;
  for (const auto& b : blocks()) {
    if (!s.empty()) s += '|';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!chars && i > 0) s += ',';
      s += space_->label(b[i]);
    }
  }
  return s;
}

bool Partition::operator==(const Partition& other) const {
  if (space_ != other.space_ && !(*space_ == *other.space_)) return false;
  return block_of_ == other.block_of_;
}

Partition parse_partition_lines(std::string_view text, SpacePtr space) {
  std::vector<std::string> labels;
  std::vector<std::string> block_names;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto colon = line.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == line.size()) {
      throw ValidationError("line " + std::to_string(lineno) + ": expected label:block");
    }
    labels.push_back(line.substr(0, colon));
    block_names.push_back(line.substr(colon + 1));
  }
  if (!space) space = std::make_shared<const SampleSpace>(labels);
  if (labels.size() != space->size()) {
    throw ValidationError("partition lines must assign every sample point exactly once");
  }
  std::map<std::string, int> block_ids;
  std::vector<int> ids(space->size(), -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto idx = space->find(labels[i]);
    if (!idx) throw ValidationError("unknown sample point '" + labels[i] + "'");
    if (ids[*idx] != -1) throw ValidationError("sample point '" + labels[i] + "' listed twice");
    auto [it, _] = block_ids.emplace(block_names[i], static_cast<int>(block_ids.size()));
    ids[*idx] = it->second;
  }
  return Partition(std::move(space), std::move(ids));
}

std::string format_partition_lines(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.space().size(); ++i) {
    out += p.space().label(i) + ":" + std::to_string(p.block_of(i)) + "\n";
  }
  return out;
}

// Lattice operations --------------------------------------------------------------

Partition join(const Partition& p, const Partition& q) {
  check_same_space(p, q);
  std::map<std::pair<int, int>, int> cells;
  std::vector<int> ids(p.space().size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto key = std::make_pair(p.block_of(i), q.block_of(i));
    auto [it, _] = cells.emplace(key, static_cast<int>(cells.size()));
    ids[i] = it->second;
  }
  return Partition(p.space_ptr(), std::move(ids));
}

Partition meet(const Partition& p, const Partition& q) {
  check_same_space(p, q);
  const std::size_t n = p.space().size();
  UnionFind uf(n);
  for (const Partition* part : {&p, &q}) {
    std::vector<std::size_t> first(part->num_blocks(), n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& f = first[part->block_of(i)];
      if (f == n) {
        f = i;
      } else {
        uf.unite(f, i);
      }
    }
  }
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(uf.find(i));
  return Partition(p.space_ptr(), std::move(ids));
}

bool is_richer(const Partition& p, const Partition& q) {
  check_same_space(p, q);
  std::vector<int> target(p.num_blocks(), -1);
  for (std::size_t i = 0; i < p.space().size(); ++i) {
    int& t = target[p.block_of(i)];
    if (t == -1) {
      t = q.block_of(i);
    } else if (t != q.block_of(i)) {
      return false;
    }
  }
  return true;
}

double partition_entropy(const Partition& p) {
  const auto& w = p.space().weights();
  std::vector<double> masses(p.num_blocks(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    masses[p.block_of(i)] += w[i];
    total += w[i];
  }
  // Weights sum to 1 only up to rounding; a single block must come out as exactly 0 bits.
  for (double& m : masses) m /= total;
  return entropy(masses);
}

bool equivalent_on_support(const Partition& p, const Partition& q) {
  check_same_space(p, q);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < p.space().size(); ++i) {
    if (!p.space().has_weights() || p.space().weights()[i] > 0.0) support.push_back(i);
  }
  std::map<int, int> pq;
  std::map<int, int> qp;
  for (auto i : support) {
    auto [a, ia] = pq.emplace(p.block_of(i), q.block_of(i));
    auto [b, ib] = qp.emplace(q.block_of(i), p.block_of(i));
    if (a->second != q.block_of(i) || b->second != p.block_of(i)) return false;
  }
  return true;
}

DistributivityCheck check_distributivity(const Partition& x, const Partition& y,
                                         const Partition& z) {
  auto lhs = join(meet(z, y), meet(z, x));
  auto rhs = meet(z, join(x, y));
  const bool equal = lhs == rhs;
  return {std::move(lhs), std::move(rhs), equal};
}

void for_each_rgs(std::size_t n, const std::function<bool(const std::vector<int>&)>& visit) {
  if (n == 0) return;
  std::vector<int> a(n, 0);
  std::vector<int> prefix_max(n, 0);  // max of a[0..i]
  while (true) {
    if (!visit(a)) return;
    // Increment the rightmost position that can still grow.
    std::size_t i = n - 1;
    while (i > 0 && a[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

}  // namespace infodecomp
