#pragma once

// Brute-force partition algebra for checking the lattice module.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "infodecomp/lattice.hpp"

namespace testing_support {

using infodecomp::Partition;
using infodecomp::SpacePtr;

// Every partition of the space, generated from restricted growth strings.
inline std::vector<Partition> all_partitions(const SpacePtr& space) {
  const std::size_t n = space->size();
  std::vector<Partition> out;
  std::vector<int> rgs(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
    if (i == n) {
      out.emplace_back(space, rgs);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

// Every block of `fine` lies inside a block of `coarse`.
inline bool refines(const Partition& fine, const Partition& coarse) {
  const std::size_t n = fine.space().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (fine.block_of(i) == fine.block_of(j) && coarse.block_of(i) != coarse.block_of(j)) {
        return false;
      }
    }
  }
  return true;
}

inline Partition ref_join(const Partition& p, const Partition& q) {
  std::map<std::pair<int, int>, int> id;
  std::vector<int> blocks;
  for (std::size_t i = 0; i < p.space().size(); ++i) {
    auto key = std::make_pair(p.block_of(i), q.block_of(i));
    blocks.push_back(id.emplace(key, static_cast<int>(id.size())).first->second);
  }
  return Partition(p.space_ptr(), blocks);
}

// Coarsest common refinement's dual: the coarsening of both with the most blocks.
inline Partition ref_meet(const Partition& p, const Partition& q) {
  const Partition* best = nullptr;
  static thread_local std::vector<Partition> pool;
  pool = all_partitions(p.space_ptr());
  for (const auto& r : pool) {
    if (refines(p, r) && refines(q, r) && (!best || r.num_blocks() > best->num_blocks())) best = &r;
  }
  return *best;
}

inline Partition random_partition(const SpacePtr& space, std::mt19937& rng) {
  std::uniform_int_distribution<int> k(1, static_cast<int>(space->size()));
  std::uniform_int_distribution<int> b(0, k(rng) - 1);
  std::vector<int> ids(space->size());
  for (auto& v : ids) v = b(rng);
  return Partition(space, ids);
}

inline SpacePtr points(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return std::make_shared<const infodecomp::SampleSpace>(labels);
}

// Names of the lattice laws that fail for (p, q, r); empty when all hold.
inline std::vector<std::string> lattice_law_failures(const Partition& p, const Partition& q,
                                                     const Partition& r) {
  using infodecomp::join;
  using infodecomp::meet;
  std::vector<std::string> bad;
  if (!(join(p, q) == join(q, p))) bad.push_back("join commutativity");
  if (!(meet(p, q) == meet(q, p))) bad.push_back("meet commutativity");
  if (!(join(join(p, q), r) == join(p, join(q, r)))) bad.push_back("join associativity");
  if (!(meet(meet(p, q), r) == meet(p, meet(q, r)))) bad.push_back("meet associativity");
  if (!(join(p, meet(p, q)) == p)) bad.push_back("absorption join");
  if (!(meet(p, join(p, q)) == p)) bad.push_back("absorption meet");
  if (!(join(p, p) == p) || !(meet(p, p) == p)) bad.push_back("idempotence");
  return bad;
}

}  // namespace testing_support
