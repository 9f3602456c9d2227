// Acceptance run: one PASS/FAIL line per criterion, each with its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "infodecomp/battery.hpp"
#include "infodecomp/bottleneck.hpp"
#include "infodecomp/common_info.hpp"
#include "infodecomp/oracle.hpp"
#include "infodecomp/pid.hpp"
#include "infodecomp/pmf_io.hpp"
#include "infodecomp/secrecy.hpp"
#include "infodecomp/zero_error.hpp"
#include "lattice_support.hpp"
#include "support.hpp"

using namespace infodecomp;
using namespace testing_support;

namespace {

// Collects failed checks; an empty list means the criterion passed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ |= !ok;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << ": got " << got << " want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
  bool failed() const { return failed_; }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Checks&)> body;
};

void xor_golden(Checks& c) {
  const auto p = make_xor().pmf;
  c.near(mutual_information(p, {0}, {1}), 0.0, 1e-9, "I(X1;X2)");
  c.near(mutual_information(p, {0}, {2}), 0.0, 1e-9, "I(X1;Y)");
  c.near(mutual_information(p, {1}, {2}), 0.0, 1e-9, "I(X2;Y)");
  c.near(mutual_information(p, {0, 1}, {2}), 1.0, 1e-9, "I(X1X2;Y)");
  c.near(conditional_mutual_information(p, {0}, {1}, {2}), 1.0, 1e-9, "I(X1;X2|Y)");
  c.near(intrinsic_information(p).value, 0.0, 1e-3, "intrinsic");
  const auto s = synergy_gk(p);
  c.near(s.via_intrinsic, 1.0, 1e-3, "synergy via intrinsic");
  c.near(s.via_union, 1.0, 1e-3, "synergy via union");
}

void noisy_blocks(Checks& c) {
  c.expect(gk_common_information(make_noisy_blocks(0.0).pmf) == 1.0, "C_GK at delta 0");
  for (double d : {1e-6, 0.01, 0.1}) {
    c.expect(gk_common_information(make_noisy_blocks(d).pmf) == 0.0,
             "C_GK at delta " + std::to_string(d));
  }
}

void ordering(Checks& c) {
  for (std::uint32_t s = 0; s < 200; ++s) {
    for (std::size_t k : {2u, 3u}) {
      const auto p = make_random(1000 + s, {k, k}).pmf;
      const auto rep = check_ci_ordering(p, {4, s});
      const std::string tag = std::to_string(k) + "x" + std::to_string(k) + " seed " +
                              std::to_string(1000 + s);
      c.expect(rep.gk <= rep.mi, "C_GK > I on " + tag);
      c.expect(rep.mi <= rep.wyner_upper + 1e-6, "I > C_W on " + tag);
      c.expect(residual_information(p) >= 0.0, "negative residual on " + tag);
    }
  }
}

void witsenhausen(Checks& c) {
  const auto d = make_typewriter_pair();
  const auto g = characteristic_graph(d.pmf);
  c.expect(chromatic_color(g).coloring.num_colors == 3, "chromatic number");

  std::vector<std::size_t> gamma(g.vertices.size(), 99);
  const std::vector<std::vector<std::string>> sets{{"01", "67", "ab"}, {"23", "89", "ef"}, {"45", "cd"}};
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (const auto& l : sets[k]) gamma[*g.vertices.find(l)] = k;
  }
  c.expect(is_proper_coloring(g, gamma), "reference coloring proper");

  const auto& [x, y] = *d.partitions;
  const auto w = witsenhausen_private(x, y);
  c.expect(w.num_colors == 3, "three colors");
  c.expect(join(w.partition, y) == join(x, y), "PI_W join Y");
  c.expect(w.all_minimal.size() >= 2, "non-unique minimal colorings");
  for (const auto& p : w.all_minimal) c.expect(join(p, y) == join(x, y), "minimal join Y");
}

void hexner_yo(Checks& c) {
  const auto d = make_hexner_yo();
  const auto& [x, y] = *d.partitions;
  std::set<std::string> found;
  for (const auto& p : hexner_yo_private(x, y)) found.insert(p.to_string());
  for (auto ref : kHexnerYoReferenceSolutions) {
    c.expect(found.count(std::string(ref)) > 0, std::string(ref) + " listed");
    const auto p = Partition::parse(x.space_ptr(), ref);
    c.expect(join(p, meet(x, y)) == x, std::string(ref) + " recovers X");
    c.expect(join(p, y) == join(x, y), std::string(ref) + " preserves X join Y");
  }
}

// Information order: a partition sits below every refinement of it, so the meet
// is the finest common coarsening and the join the coarsest common refinement.
void check_laws(Checks& c, const Partition& p, const Partition& q, const Partition& r) {
  for (const auto& f : lattice_law_failures(p, q, r)) c.expect(false, f);
  const auto m = meet(p, q);
  c.expect(refines(p, m) && refines(q, m), "meet is a lower bound");
  if (refines(p, r) && refines(q, r)) c.expect(refines(m, r), "meet is the greatest lower bound");
  const auto j = join(p, q);
  c.expect(refines(j, p) && refines(j, q), "join is an upper bound");
  if (refines(r, p) && refines(r, q)) c.expect(refines(r, j), "join is the least upper bound");
}

void lattice_laws(Checks& c) {
  const auto five = points(5);
  const auto all = all_partitions(five);
  for (const auto& p : all) {
    for (const auto& q : all) {
      for (const auto& r : all) check_laws(c, p, q, r);
    }
  }
  std::mt19937 rng(8);
  const auto eight = points(8);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_partition(eight, rng);
    const auto q = random_partition(eight, rng);
    const auto r = random_partition(eight, rng);
    check_laws(c, p, q, r);
  }
  const auto s = points(4);
  const auto d = check_distributivity(Partition(s, {0, 0, 1, 1}), Partition(s, {0, 1, 0, 1}),
                                      Partition(s, {0, 1, 1, 0}));
  c.expect(!d.equal, "XOR distributivity returns equal=false");
}

void gk_degeneracy(Checks& c) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    c.expect(gk_redundancy(make_bsc_coupled(s).pmf).i_bits == 0.0,
             "i_bits nonzero on bsc_coupled " + std::to_string(s));
  }
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = make_decomposable_target(s).pmf;
    const double hq = ref_entropy(p, {2});
    c.near(gk_redundancy(p).i_bits, hq, 1e-9, "decomposable " + std::to_string(s));
    c.near(ref_mi(p, {2}, {2}), hq, 1e-12, "I(Q;Y) on decomposable " + std::to_string(s));
  }
}

void conditional_gk_criterion(Checks& c) {
  const auto p = make_copy_both().pmf;
  for (const VarList& order : {VarList{2, 0, 1}, VarList{2, 1, 0}}) {
    const auto yx = permute(p, order);
    c.near(conditional_gk(yx).value, 1.0, 2e-3, "copy_both optimizer");
    c.near(oracle::conditional_gk_deterministic(yx, 2).value, 1.0, 2e-3, "copy_both oracle");
  }
  const auto u = conditional_gk_unique({8, 0});
  std::size_t tested = 0;
  for (const auto& d : standard_battery()) {
    const auto& q = d.pmf;
    if (q.arity() != 3 || !is_perfectly_resolvable(marginalize(q, {2, 0})) ||
        !is_perfectly_resolvable(marginalize(q, {2, 1}))) {
      continue;
    }
    ++tested;
    const double r = consistency_residual(u, q);
    c.expect(r <= 2e-3, d.name + " residual " + std::to_string(r));
  }
  c.expect(tested > 0, "no resolvable battery pmf");
}

void oracle_equivalence(Checks& c) {
  std::vector<NamedDistribution> pmfs;
  for (auto& d : standard_battery()) {
    const auto& q = d.pmf;
    if (q.arity() == 3 && q.dim(0) == 2 && q.dim(1) == 2 && q.dim(2) == 2) pmfs.push_back(d);
  }
  for (std::uint64_t s = 0; pmfs.size() < 10; ++s) pmfs.push_back(make_random(s, {2, 2, 2}));
  if (pmfs.size() > 10) pmfs.erase(pmfs.begin() + 10, pmfs.end());
  for (const auto& d : pmfs) {
    c.near(union_information(d.pmf).value, oracle::union_grid(d.pmf).value, 1e-3,
           "union on " + d.name);
    c.near(intrinsic_information(d.pmf).value, oracle::intrinsic_grid(d.pmf).value, 1e-3,
           "intrinsic on " + d.name);
  }
}

void cib_limits(Checks& c) {
  for (const auto& d : standard_battery()) {
    if (d.pmf.arity() != 3) continue;
    const auto s = cib_optimize(d.pmf, 0.0);
    c.expect(s.compression <= 1e-3, "beta 0 compression on " + d.name);
    c.expect(s.traces_monotone, "trace on " + d.name);
    c.expect(marginalize(cib_joint(d.pmf, s.encoder), {0, 1, 2}) == d.pmf,
             "marginal on " + d.name);
  }
  for (const auto& d : {make_xor(), make_copy_both()}) {
    const auto s = cib_optimize(d.pmf, 100.0, {d.pmf.dim(2), 8, 0});
    c.near(s.relevance, ref_cmi(d.pmf, {0}, {2}, {1}), 2e-3, "beta 100 relevance on " + d.name);
    c.expect(s.traces_monotone, "trace on " + d.name);
    c.expect(marginalize(cib_joint(d.pmf, s.encoder), {0, 1, 2}) == d.pmf,
             "marginal on " + d.name);
  }
}

void lockability(Checks& c) {
  for (std::uint32_t s = 0; s < 200; ++s) {
    const auto ext = random_pmf(s, {2, 2, 2, 2});
    const auto r = lockability_bound_check(marginalize(ext, {0, 1, 2}), ext, false);
    c.expect(r.holds, "library check on seed " + std::to_string(s));
    const double diff = std::abs(ref_cmi(ext, {0}, {1}, {2, 3}) - ref_cmi(ext, {0}, {1}, {2}));
    c.expect(diff <= ref_entropy(ext, {3}) + 1e-9, "inequality on seed " + std::to_string(s));
  }
}

void witness(Checks& c) {
  const auto seed = search_consistency_witness(0, 50);
  c.expect(seed.has_value(), "search found a witness");
  if (!seed) return;
  const auto p = make_random(*seed, {2, 2, 2}).pmf;
  const double r = consistency_residual(intrinsic_unique(), p);
  c.expect(r > 1e-3, "residual " + std::to_string(r));
  c.expect(*seed == kConsistencyWitnessSeed, "frozen seed matches search");
  const auto stored = read_pmf_file(default_corpus_dir() / "consistency_witness.pmf");
  c.expect(stored == p, "corpus copy matches");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "xor golden values", 5, xor_golden},
      {2, "noisy blocks discontinuity", 1, noisy_blocks},
      {3, "common information ordering", 120, ordering},
      {4, "witsenhausen typewriter", 5, witsenhausen},
      {5, "hexner-yo six points", 5, hexner_yo},
      {6, "partition lattice laws", 60, lattice_laws},
      {7, "gk redundancy degeneracy", 30, gk_degeneracy},
      {8, "conditional gk", 120, conditional_gk_criterion},
      {9, "union and intrinsic vs grid oracles", 600, oracle_equivalence},
      {10, "conditional bottleneck limits", 60, cib_limits},
      {11, "lockability inequality", 30, lockability},
      {12, "consistency violation witness", 300, witness},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    checks.expect(secs <= cr.budget_s, "over budget");
    const bool pass = !checks.failed();
    failed += !pass;
    std::printf("%s %2d %-38s %8.2fs / %gs%s%s\n", pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs,
                cr.budget_s, pass ? "" : "  ", checks.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
