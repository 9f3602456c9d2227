#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "infodecomp/battery.hpp"
#include "infodecomp/common_info.hpp"
#include "infodecomp/oracle.hpp"
#include "infodecomp/pid.hpp"
#include "support.hpp"

using namespace infodecomp;
using namespace testing_support;

namespace {

void expect_atoms(const PIDAtoms& a, double r, double u1, double u2, double s) {
  EXPECT_NEAR(a.redundant, r, 1e-9);
  EXPECT_NEAR(a.unique1, u1, 1e-9);
  EXPECT_NEAR(a.unique2, u2, 1e-9);
  EXPECT_NEAR(a.synergistic, s, 1e-9);
}

std::vector<JointPMF> battery_pmfs() {
  std::vector<JointPMF> out;
  for (const auto& d : standard_battery()) out.push_back(d.pmf);
  return out;
}

// Four copies of one uniform bit: (X1, X2, X3, Y).
JointPMF four_copies() {
  std::vector<double> m(16, 0.0);
  m[0] = m[15] = 0.5;
  return bits(4, m);
}

}  // namespace

TEST(PidAtoms, Xor) { expect_atoms(pid_atoms(make_xor().pmf, 0.0), 0, 0, 0, 1); }

TEST(PidAtoms, CopyBoth) { expect_atoms(pid_atoms(make_copy_both().pmf, 0.0), 0, 1, 1, 0); }

TEST(PidAtoms, Redundant) { expect_atoms(pid_atoms(make_redundant().pmf, 1.0), 1, 0, 0, 0); }

TEST(PidAtoms, NegativeSynergyIsFlaggedNotClamped) {
  const auto a = pid_atoms(make_redundant().pmf, 0.0);
  EXPECT_TRUE(a.negative_synergy);
  EXPECT_NEAR(a.synergistic, -1.0, 1e-9);
}

TEST(PidAtoms, RedundancyOutOfRangeThrows) {
  EXPECT_THROW(pid_atoms(make_xor().pmf, 0.5), ValidationError);
  EXPECT_THROW(pid_atoms(make_redundant().pmf, -0.1), ValidationError);
}

TEST(PidAtoms, BookkeepingIdentities) {
  for (std::uint32_t s = 0; s < 200; ++s) {
    const auto p = random_pmf(s, {2, 3, 2});
    const double i1 = ref_mi(p, {0}, {2}), i2 = ref_mi(p, {1}, {2});
    const double r = std::min(i1, i2) * (s % 5) / 4.0;
    const auto a = pid_atoms(p, r);
    EXPECT_NEAR(a.redundant + a.unique1, i1, 1e-9);
    EXPECT_NEAR(a.redundant + a.unique2, i2, 1e-9);
    EXPECT_NEAR(a.redundant + a.unique1 + a.unique2 + a.synergistic, ref_mi(p, {0, 1}, {2}), 1e-9);
    EXPECT_NEAR(a.unique1 + a.synergistic, ref_cmi(p, {0}, {2}, {1}), 1e-9);
    EXPECT_NEAR(a.unique2 + a.synergistic, ref_cmi(p, {1}, {2}, {0}), 1e-9);
  }
}

TEST(GkRedundancy, RedundantBit) {
  const auto g = gk_redundancy(make_redundant().pmf);
  EXPECT_NEAR(g.c_bits, 1.0, 1e-12);
  EXPECT_NEAR(g.i_bits, 1.0, 1e-12);
}

TEST(GkRedundancy, DecomposableFamilyRecoversSharedPart) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = make_decomposable_target(s).pmf;
    const auto g = gk_redundancy(p);
    EXPECT_NEAR(g.i_bits, ref_entropy(p, {2}), 1e-9) << s;
    EXPECT_NEAR(g.c_bits, ref_entropy(p, {2}), 1e-9) << s;
  }
}

TEST(GkRedundancy, IndecomposablePredictorsGiveZero) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = make_bsc_coupled(s).pmf;
    EXPECT_EQ(gk_redundancy(p).i_bits, 0.0) << s;
    EXPECT_EQ(gk_common_information(marginalize(p, {0, 1})), 0.0);
  }
}

TEST(GkRedundancy, MeetOrderDoesNotMatter) {
  const auto p = make_decomposable_target(3).pmf;
  const auto a = predictor_meet(p, {0, 1});
  const auto b = predictor_meet(p, {1, 0});
  EXPECT_TRUE(equivalent_on_support(a, b));
  EXPECT_NEAR(partition_entropy(a), ref_entropy(p, {2}), 1e-12);
}

TEST(GkRedundancy, ThreePredictors) {
  const auto g = gk_redundancy(four_copies());
  EXPECT_NEAR(g.i_bits, 1.0, 1e-12);
}

TEST(GkRedundancy, BoundsOnBattery) {
  for (const auto& d : standard_battery()) {
    const auto& p = d.pmf;
    const auto g = gk_redundancy(p);
    const std::size_t y = p.arity() - 1;
    double min_mi = INFINITY;
    VarList preds;
    for (std::size_t a = 0; a < y; ++a) {
      min_mi = std::min(min_mi, ref_mi(p, {a}, {y}));
      preds.push_back(a);
    }
    const double h_meet = partition_entropy(predictor_meet(p, preds));
    EXPECT_LE(g.i_bits, g.c_bits + 1e-12) << d.name;
    EXPECT_LE(g.c_bits, h_meet + 1e-12) << d.name;
    EXPECT_LE(g.i_bits, min_mi + 1e-12) << d.name;
    if (p.arity() == 3 && gk_common_information(marginalize(p, {0, 1})) == 0.0) {
      EXPECT_EQ(g.i_bits, 0.0) << d.name;
    }
  }
}

TEST(WbAxioms, GkHasNoViolations) {
  auto pmfs = battery_pmfs();
  pmfs.push_back(four_copies());
  const auto rep = check_wb_axioms(gk_redundancy_measure(), pmfs);
  EXPECT_EQ(rep.pmfs_checked, pmfs.size());
  for (const auto& v : rep.violations) ADD_FAILURE() << v.pmf_index << " " << v.axiom << " " << v.detail;
}

TEST(WbAxioms, NegativeConstantFailsPositivityEverywhere) {
  const auto pmfs = battery_pmfs();
  const auto rep = check_wb_axioms(constant_measure(-1.0), pmfs);
  std::size_t gp = 0;
  for (const auto& v : rep.violations) gp += v.axiom == "GP";
  EXPECT_EQ(gp, pmfs.size());
}

TEST(WbAxioms, WynerFailsMonotonicityOnXorChain) {
  const auto rep = check_wb_axioms(wyner_redundancy_measure({8, 0}), {make_xor_chain().pmf});
  const bool m = std::any_of(rep.violations.begin(), rep.violations.end(),
                             [](const auto& v) { return v.axiom == "M"; });
  EXPECT_TRUE(m);
}

TEST(WbAxioms, EmptyBatteryThrows) {
  EXPECT_THROW(check_wb_axioms(gk_redundancy_measure(), {}), ValidationError);
}

TEST(Consistency, ConditionalMutualInformationIsConsistent) {
  const auto u = conditional_mi_unique();
  for (std::uint32_t s = 0; s < 100; ++s) {
    EXPECT_LE(consistency_residual(u, random_pmf(s, {2, 3, 2})), 1e-9);
  }
}

TEST(Consistency, IntrinsicWitnessViolates) {
  const auto p = make_consistency_witness().pmf;
  const double r = consistency_residual(intrinsic_unique(), p);
  EXPECT_GT(r, 1e-3);
  // Same residual from the grid oracle.
  const double u1 = oracle::intrinsic_grid(permute(p, {2, 0, 1})).value;
  const double u2 = oracle::intrinsic_grid(permute(p, {2, 1, 0})).value;
  const double ref = std::abs(ref_mi(p, {2}, {0}) + u2 - ref_mi(p, {2}, {1}) - u1);
  EXPECT_NEAR(r, ref, 1e-3);
}

TEST(ConditionalGk, CopyBothIsOneBitEachSide) {
  const auto p = make_copy_both().pmf;
  const auto a = conditional_gk(permute(p, {2, 0, 1}));
  const auto b = conditional_gk(permute(p, {2, 1, 0}));
  EXPECT_NEAR(a.value, 1.0, 2e-3);
  EXPECT_NEAR(b.value, 1.0, 2e-3);
  EXPECT_EQ(a.bound_kind, BoundKind::lower);
  EXPECT_NEAR(oracle::conditional_gk_deterministic(permute(p, {2, 0, 1}), 2).value, 1.0, 1e-12);
}

TEST(ConditionalGk, IndependentTargetIsZero) {
  const auto p = make_independent().pmf;
  EXPECT_NEAR(conditional_gk(permute(p, {2, 0, 1})).value, 0.0, 1e-6);
  EXPECT_NEAR(oracle::conditional_gk_deterministic(permute(p, {2, 0, 1}), 2).value, 0.0, 1e-12);
}

TEST(ConditionalGk, RedundantHasNoUniquePart) {
  const auto p = make_redundant().pmf;
  EXPECT_NEAR(conditional_gk(permute(p, {2, 0, 1})).value, 0.0, 1e-6);
  EXPECT_NEAR(conditional_gk(permute(p, {2, 1, 0})).value, 0.0, 1e-6);
}

TEST(ConditionalGk, NeverBelowDeterministicOracle) {
  for (const auto& d : standard_battery()) {
    if (d.pmf.arity() != 3) continue;
    const auto yx = permute(d.pmf, {2, 0, 1});
    const std::size_t q = std::min(yx.dim(0), yx.dim(1));
    if (yx.dim(0) * yx.dim(2) > 8 || q > 4) continue;
    const auto r = conditional_gk(yx, q, {4, 0});
    EXPECT_GE(r.value, oracle::conditional_gk_deterministic(yx, q).value - 1e-9) << d.name;
    EXPECT_LE(r.constraint_violation, kCondGKFeasibleTol) << d.name;
  }
}

TEST(ConditionalGk, ConsistentWhenBothPairsResolvable) {
  const auto u = conditional_gk_unique({8, 0});
  std::size_t tested = 0;
  for (const auto& d : standard_battery()) {
    const auto& p = d.pmf;
    if (p.arity() != 3) continue;
    if (!is_perfectly_resolvable(marginalize(p, {2, 0})) ||
        !is_perfectly_resolvable(marginalize(p, {2, 1}))) {
      continue;
    }
    ++tested;
    EXPECT_LE(consistency_residual(u, p), 2e-3) << d.name;
  }
  EXPECT_GE(tested, 3u);
}
