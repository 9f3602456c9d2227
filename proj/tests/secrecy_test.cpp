#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "infodecomp/battery.hpp"
#include "infodecomp/oracle.hpp"
#include "infodecomp/secrecy.hpp"
#include "support.hpp"

using namespace infodecomp;
using namespace testing_support;

namespace {

// Adds eps * (+1, -1, -1, +1) to the (x1, x2) slice at y; both pairwise
// marginals with Y stay fixed.
JointPMF perturb(const JointPMF& p, std::size_t y, double eps) {
  std::vector<double> m(p.mass().begin(), p.mass().end());
  auto cell = [&](std::size_t a, std::size_t b) -> double& { return m[(a * 2 + b) * 2 + y]; };
  cell(0, 0) += eps;
  cell(1, 1) += eps;
  cell(0, 1) -= eps;
  cell(1, 0) -= eps;
  return JointPMF(p.alphabets(), std::move(m));
}

// Largest step keeping the perturbed slice nonnegative.
double room(const JointPMF& p, std::size_t y) {
  return std::min(p.at({0, 1, y}), p.at({1, 0, y}));
}

}  // namespace

TEST(Intrinsic, XorIsZero) {
  EXPECT_NEAR(intrinsic_information(make_xor().pmf).value, 0.0, 1e-6);
}

TEST(Intrinsic, ConstantTargetGivesMutualInformation) {
  const auto pair = random_pmf(5, {2, 3});
  std::vector<double> m;
  for (double v : pair.mass()) m.push_back(v);
  JointPMF p({Alphabet::range(2), Alphabet::range(3), Alphabet::range(1)}, m);
  EXPECT_NEAR(intrinsic_information(p).value, ref_mi(p, {0}, {1}), 1e-9);
}

TEST(Intrinsic, AgreesWithGridOracle) {
  for (std::uint32_t s = 0; s < 5; ++s) {
    const auto p = random_pmf(s, {2, 2, 2});
    EXPECT_NEAR(intrinsic_information(p).value, oracle::intrinsic_grid(p).value, 1e-3) << s;
  }
}

TEST(Intrinsic, BoundedByTrivialChannels) {
  for (std::uint32_t s = 0; s < 500; ++s) {
    const auto p = random_pmf(s, {2, 2, 2});
    const double v = intrinsic_information(p, {}, {1, s}).value;
    EXPECT_LE(v, ref_mi(p, {0}, {1}) + 1e-6);
    EXPECT_LE(v, ref_cmi(p, {0}, {1}, {2}) + 1e-6);
  }
}

TEST(Intrinsic, CardinalityAboveTargetRejected) {
  EXPECT_THROW(intrinsic_information(make_xor().pmf, 3), ValidationError);
}

TEST(Union, Examples) {
  EXPECT_NEAR(union_information(make_xor().pmf).value, 0.0, 1e-6);
  EXPECT_NEAR(union_information(make_redundant().pmf).value, 1.0, 1e-6);
  EXPECT_NEAR(union_information(make_independent().pmf).value, 0.0, 1e-6);
}

TEST(Union, AgreesWithGridOracle) {
  for (std::uint32_t s = 0; s < 5; ++s) {
    const auto p = random_pmf(s + 10, {2, 2, 2});
    const auto r = union_information(p);
    EXPECT_NEAR(r.value, oracle::union_grid(p).value, 1e-3) << s;
    EXPECT_LE(r.constraint_violation, kPolytopeTol);
    EXPECT_LE(r.value, ref_mi(p, {0, 1}, {2}) + 1e-9);
  }
}

TEST(Union, InvariantWithinPolytope) {
  for (std::uint32_t s = 0; s < 10; ++s) {
    const auto p = random_pmf(s + 20, {2, 2, 2});
    const double base = union_information(p).value;
    for (std::size_t y = 0; y < 2; ++y) {
      const auto q = perturb(p, y, 0.9 * room(p, y));
      ASSERT_LE(polytope_deviation(p, q), 1e-12);
      EXPECT_NEAR(union_information(q).value, base, 2e-3) << s;
    }
  }
}

TEST(Union, ConditionallyIndependentPointIsFeasible) {
  const auto p = random_pmf(4, {2, 3, 2});
  const auto ci = conditionally_independent_point(p);
  EXPECT_LE(polytope_deviation(p, ci), 1e-12);
  EXPECT_NEAR(ref_cmi(ci, {0}, {1}, {2}), 0.0, 1e-12);
}

TEST(Synergy, XorBothRoutesOneBit) {
  const auto s = synergy_gk(make_xor().pmf);
  EXPECT_NEAR(s.via_intrinsic, 1.0, 1e-3);
  EXPECT_NEAR(s.via_union, 1.0, 1e-3);
}

TEST(Synergy, RedundantIsZero) {
  const auto s = synergy_gk(make_redundant().pmf);
  EXPECT_NEAR(s.via_intrinsic, 0.0, 1e-6);
  EXPECT_NEAR(s.via_union, 0.0, 1e-6);
}

TEST(Synergy, AndGateUnionRouteMatchesOracle) {
  const auto p = make_and().pmf;
  const double expected = ref_mi(p, {0, 1}, {2}) - oracle::union_grid(p).value;
  const auto s = synergy_gk(p);
  EXPECT_NEAR(s.via_union, expected, 1e-3);
  EXPECT_NEAR(s.gap, s.via_intrinsic - s.via_union, 1e-12);
}

TEST(Lockability, ConstantAndCopiedSideVariable) {
  const auto p = random_pmf(6, {2, 2, 2});
  std::vector<double> c, copy(16, 0.0);
  for (double v : p.mass()) c.push_back(v);
  JointPMF with_const({Alphabet::range(2), Alphabet::range(2), Alphabet::range(2),
                       Alphabet::range(1)},
                      c);
  const auto a = lockability_bound_check(p, with_const);
  EXPECT_NEAR(a.cmi_difference, 0.0, 1e-12);
  ASSERT_TRUE(a.synergy_difference);
  EXPECT_NEAR(*a.synergy_difference, 0.0, 1e-6);

  for (std::size_t i = 0; i < 8; ++i) copy[i * 2 + i % 2] = p.mass()[i];
  const auto b = lockability_bound_check(p, bits(4, copy), false);
  EXPECT_NEAR(b.cmi_difference, 0.0, 1e-12);
  EXPECT_NEAR(b.bound, ref_entropy(p, {2}), 1e-12);
  EXPECT_TRUE(b.holds);
}

TEST(Lockability, HoldsOnRandomExtensions) {
  for (std::uint32_t s = 0; s < 200; ++s) {
    const auto ext = random_pmf(s, {2, 2, 2, 2});
    const auto p = marginalize(ext, {0, 1, 2});
    const auto r = lockability_bound_check(p, ext, false);
    EXPECT_TRUE(r.holds);
    const double diff = std::abs(ref_cmi(ext, {0}, {1}, {2, 3}) - ref_cmi(ext, {0}, {1}, {2}));
    EXPECT_LE(diff, ref_entropy(ext, {3}) + 1e-9);
  }
}

TEST(Lockability, MarginalMismatchThrows) {
  EXPECT_THROW(lockability_bound_check(make_xor().pmf, random_pmf(1, {2, 2, 2, 2})),
               ValidationError);
}
