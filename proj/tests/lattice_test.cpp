#include <gtest/gtest.h>

#include <cmath>

#include "infodecomp/lattice.hpp"
#include "lattice_support.hpp"
#include "support.hpp"

using namespace infodecomp;
using namespace testing_support;

namespace {

SpacePtr hex() { return SampleSpace::from_chars("0123456789abcdef"); }
SpacePtr six() { return SampleSpace::from_chars("012345"); }

}  // namespace

TEST(Join, TypewriterPairIsDiscrete) {
  const auto x = Partition::parse(hex(), "01|23|45|67|89|ab|cd|ef");
  const auto y = Partition::parse(hex(), "02|34|56|78|19|ac|de|bf");
  EXPECT_EQ(join(x, y), Partition::discrete(x.space_ptr()));
}

TEST(Join, SixPointPairIsDiscrete) {
  const auto s = six();
  EXPECT_EQ(join(Partition::parse(s, "0|12|3|45"), Partition::parse(s, "01|2|34|5")).to_string(),
            "0|1|2|3|4|5");
}

TEST(Join, Idempotent) {
  const auto p = Partition::parse(six(), "03|1245");
  EXPECT_EQ(join(p, p), p);
}

TEST(Meet, TypewriterPair) {
  const auto x = Partition::parse(hex(), "01|23|45|67|89|ab|cd|ef");
  const auto y = Partition::parse(hex(), "02|34|56|78|19|ac|de|bf");
  EXPECT_EQ(meet(x, y).to_string(), "0123456789|abcdef");
}

TEST(Meet, SixPointPair) {
  const auto s = six();
  EXPECT_EQ(meet(Partition::parse(s, "0|12|3|45"), Partition::parse(s, "01|2|34|5")).to_string(),
            "012|345");
}

TEST(Meet, WithDiscreteIsIdentity) {
  const auto p = Partition::parse(six(), "04|12|35");
  EXPECT_EQ(meet(p, Partition::discrete(p.space_ptr())), p);
}

TEST(Meet, MismatchedSpacesThrow) {
  EXPECT_THROW(meet(Partition::discrete(six()), Partition::discrete(hex())), ValidationError);
  EXPECT_THROW(join(Partition::discrete(six()), Partition::discrete(hex())), ValidationError);
}

TEST(IsRicher, DiscreteIsRicherThanAnything) {
  const auto p = Partition::parse(six(), "03|1245");
  EXPECT_TRUE(is_richer(Partition::discrete(p.space_ptr()), p));
}

TEST(IsRicher, PredictorRicherThanMeet) {
  const auto x = Partition::parse(hex(), "01|23|45|67|89|ab|cd|ef");
  const auto y = Partition::parse(hex(), "02|34|56|78|19|ac|de|bf");
  EXPECT_TRUE(is_richer(x, meet(x, y)));
  EXPECT_TRUE(is_richer(y, meet(x, y)));
}

TEST(IsRicher, CrossingPartitionsAreIncomparable) {
  const auto s = SampleSpace::from_chars("0123");
  const auto p = Partition::parse(s, "01|23");
  const auto q = Partition::parse(s, "02|13");
  // Block {0,1} of p is split by q.
  EXPECT_NE(q.block_of(0), q.block_of(1));
  EXPECT_FALSE(is_richer(p, q));
  EXPECT_FALSE(is_richer(q, p));
}

TEST(PartitionEntropy, TwoEqualBlocks) {
  EXPECT_DOUBLE_EQ(partition_entropy(Partition::parse(SampleSpace::from_chars("0123"), "01|23")), 1.0);
}

TEST(PartitionEntropy, SingleBlock) {
  EXPECT_EQ(partition_entropy(Partition::indiscrete(six())), 0.0);
}

TEST(PartitionEntropy, SixteenPointMeet) {
  EXPECT_NEAR(partition_entropy(Partition::parse(hex(), "0123456789|abcdef")), h2(10.0 / 16.0),
              1e-12);
}

TEST(PartitionEntropy, MissingWeightsThrow) {
  EXPECT_THROW(partition_entropy(Partition::discrete(points(3))), ValidationError);
}

TEST(Distributivity, XorIsNotDistributive) {
  const auto s = std::make_shared<const SampleSpace>(std::vector<std::string>{"00", "01", "10", "11"});
  const auto x = Partition(s, {0, 0, 1, 1});
  const auto y = Partition(s, {0, 1, 0, 1});
  const auto z = Partition(s, {0, 1, 1, 0});
  const auto d = check_distributivity(x, y, z);
  EXPECT_FALSE(d.equal);
  EXPECT_EQ(d.lhs, Partition::indiscrete(s));
  EXPECT_EQ(d.rhs, z);
}

TEST(Distributivity, IdenticalArgumentsAreDistributive) {
  const auto p = Partition::parse(six(), "03|1245");
  EXPECT_TRUE(check_distributivity(p, p, p).equal);
}

TEST(Distributivity, IndependentCoordinates) {
  const auto s = points(8);
  const Partition a(s, {0, 0, 0, 0, 1, 1, 1, 1});
  const Partition b(s, {0, 0, 1, 1, 0, 0, 1, 1});
  const Partition c(s, {0, 1, 0, 1, 0, 1, 0, 1});
  const auto d = check_distributivity(a, b, c);
  EXPECT_TRUE(d.equal);
  EXPECT_EQ(d.lhs, Partition::indiscrete(s));
}

TEST(PartitionText, BlockNotationAndLines) {
  const auto p = Partition::parse(hex(), "0167ab|2389ef|45cd");
  EXPECT_EQ(p.to_string(), "0167ab|2389ef|45cd");
  EXPECT_EQ(parse_partition_lines(format_partition_lines(p), p.space_ptr()), p);
  EXPECT_THROW(Partition::parse(six(), "012|34"), ValidationError);
  EXPECT_THROW(Partition::parse(six(), "012|345|0"), ValidationError);
}

TEST(RgsEnumeration, CountsAreBellNumbers) {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t count = 0;
    for_each_rgs(n, [&](const std::vector<int>&) { return ++count, true; });
    EXPECT_EQ(count, bell[n]) << n;
  }
}

TEST(LatticeProperties, JoinAndMeetMatchBruteForce) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = all_partitions(points(n));
    for (const auto& p : all) {
      for (const auto& q : all) {
        ASSERT_EQ(join(p, q), ref_join(p, q));
        ASSERT_EQ(meet(p, q), ref_meet(p, q));
      }
    }
  }
}

TEST(LatticeProperties, LawsOnRandomTriples) {
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    const auto s = points(2 + t % 9);
    const auto p = random_partition(s, rng), q = random_partition(s, rng), r = random_partition(s, rng);
    EXPECT_TRUE(lattice_law_failures(p, q, r).empty());
  }
}

TEST(LatticeProperties, MeetIsGreatestLowerBound) {
  std::mt19937 rng(23);
  for (int t = 0; t < 500; ++t) {
    const auto s = points(3 + t % 4);
    const auto p = random_partition(s, rng), q = random_partition(s, rng);
    const auto m = meet(p, q);
    for (const auto& r : all_partitions(s)) {
      if (refines(p, r) && refines(q, r)) {
        ASSERT_TRUE(refines(m, r));
      }
    }
  }
}

TEST(LatticeProperties, RicherIffZeroConditionalEntropy) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    const auto s = std::make_shared<const SampleSpace>(labels, std::vector<double>(n, 1.0 / n));
    const auto all = all_partitions(s);
    for (const auto& p : all) {
      for (const auto& q : all) {
        // H(Q|P) = H(P v Q) - H(P)
        const double hqp = partition_entropy(join(p, q)) - partition_entropy(p);
        ASSERT_EQ(is_richer(p, q), hqp < 1e-12);
      }
    }
  }
}

TEST(LatticeProperties, EntropyMonotoneInRefinement) {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::string> labels;
    for (int i = 0; i < 6; ++i) labels.push_back(std::to_string(i));
    const auto s = std::make_shared<const SampleSpace>(labels, dirichlet(rng, 6));
    const auto p = random_partition(s, rng), q = random_partition(s, rng);
    const auto fine = join(p, q);
    EXPECT_GE(partition_entropy(fine) + 1e-12, partition_entropy(p));
    EXPECT_GE(partition_entropy(p) + 1e-12, partition_entropy(meet(p, q)));
  }
}

TEST(LatticeProperties, EquivalenceIgnoresZeroWeightPoints) {
  const auto s = std::make_shared<const SampleSpace>(std::vector<std::string>{"a", "b", "c"},
                                                     std::vector<double>{0.5, 0.5, 0.0});
  EXPECT_TRUE(equivalent_on_support(Partition(s, {0, 1, 0}), Partition(s, {0, 1, 1})));
  EXPECT_FALSE(equivalent_on_support(Partition(s, {0, 0, 0}), Partition(s, {0, 1, 1})));
}
