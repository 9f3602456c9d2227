#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "infodecomp/battery.hpp"
#include "infodecomp/cli.hpp"
#include "infodecomp/pid.hpp"
#include "infodecomp/pmf_io.hpp"
#include "support.hpp"

using namespace infodecomp;
using namespace testing_support;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("infodecomp_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Generators, ValidAndNamedUniquely) {
  std::set<std::string> names;
  for (const auto& d : corpus_distributions()) {
    EXPECT_TRUE(names.insert(d.name).second) << d.name;
    double total = 0.0;
    for (double v : d.pmf.mass()) {
      EXPECT_GE(v, 0.0);
      total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12) << d.name;
    for (const auto& e : d.expected) {
      EXPECT_GE(e.tolerance, 0.0);
      EXPECT_TRUE(std::isfinite(e.value)) << d.name << " " << e.measure;
    }
  }
}

TEST(Generators, ExpectationsUseKnownMeasures) {
  const auto known = suite_measures();
  const std::set<std::string> measures(known.begin(), known.end());
  for (const auto& d : corpus_distributions()) {
    for (const auto& e : d.expected) EXPECT_TRUE(measures.count(e.measure)) << e.measure;
  }
}

TEST(Generators, RandomIsSeeded) {
  EXPECT_EQ(make_random(3, {2, 3}).pmf, make_random(3, {2, 3}).pmf);
  EXPECT_FALSE(make_random(3, {2, 3}).pmf == make_random(4, {2, 3}).pmf);
  EXPECT_EQ(make_random(3, {2, 2, 2}).name, "random_3_2x2x2");
}

TEST(Generators, InvalidParametersThrow) {
  EXPECT_THROW(make_bsc(1.5), ValidationError);
  EXPECT_THROW(make_noisy_blocks(-0.1), ValidationError);
  EXPECT_THROW(make_decomposable(0, 2, 2), ValidationError);
}

TEST(Generators, BscMutualInformation) {
  for (double c : {0.0, 0.1, 0.3, 0.5}) {
    EXPECT_NEAR(ref_mi(make_bsc(c).pmf, {0}, {1}), 1.0 - h2(c), 1e-12);
  }
}

TEST(Generators, DecomposableTargetSharesExactlyQ) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto p = make_decomposable_target(s, 3).pmf;
    EXPECT_NEAR(ref_cmi(p, {0}, {1}, {2}), 0.0, 1e-12);
    EXPECT_NEAR(ref_mi(p, {0}, {2}), ref_entropy(p, {2}), 1e-12);
    EXPECT_NEAR(ref_mi(p, {1}, {2}), ref_entropy(p, {2}), 1e-12);
  }
}

TEST(Generators, BscCoupledHasFullPredictorSupport) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto p = make_bsc_coupled(s).pmf;
    const auto pair = marginalize(p, {0, 1});
    for (double v : pair.mass()) EXPECT_GT(v, 0.0);
  }
}

TEST(Generators, ConditionallyIndependentConstructor) {
  JointPMF py({Alphabet::range(2)}, {0.3, 0.7});
  Channel a(Alphabet::range(2), Alphabet::range(2), {0.9, 0.1, 0.2, 0.8});
  Channel b(Alphabet::range(2), Alphabet::range(3), {0.5, 0.25, 0.25, 0.1, 0.1, 0.8});
  const auto p = make_cond_independent(py, {a, b}).pmf;
  ASSERT_EQ(p.arity(), 3u);
  EXPECT_NEAR(ref_cmi(p, {0}, {1}, {2}), 0.0, 1e-12);
  EXPECT_NEAR(p.at({1, 2, 1}), 0.7 * 0.8 * 0.8, 1e-15);
}

TEST(Generators, XorChainRelations) {
  const auto p = make_xor_chain().pmf;
  ASSERT_EQ(p.arity(), 4u);
  EXPECT_EQ(conditional_entropy(p, {2}, {0, 1}), 0.0);
  EXPECT_EQ(conditional_entropy(p, {3}, {0}), 0.0);
  EXPECT_NEAR(ref_mi(p, {0}, {1}), 0.0, 1e-15);
}

TEST(ConsistencyWitness, SearchReturnsFrozenSeed) {
  const auto seed = search_consistency_witness(0, 20);
  ASSERT_TRUE(seed.has_value());
  EXPECT_EQ(*seed, kConsistencyWitnessSeed);
  EXPECT_EQ(make_consistency_witness().pmf, make_random(kConsistencyWitnessSeed, {2, 2, 2}).pmf);
  EXPECT_GT(consistency_residual(intrinsic_unique(), make_consistency_witness().pmf), 1e-3);
}

TEST(Corpus, CheckedInCopyIsCurrent) {
  const auto stale = corpus_mismatches(default_corpus_dir());
  for (const auto& f : stale) ADD_FAILURE() << "stale corpus file " << f;
}

TEST(Corpus, ManifestListsEveryPmf) {
  const auto dir = default_corpus_dir();
  const auto listed = read_manifest(dir / "manifest.txt");
  EXPECT_EQ(listed.size(), corpus_distributions().size());
  for (const auto& path : listed) {
    EXPECT_TRUE(fs::exists(path)) << path;
    EXPECT_NO_THROW(read_pmf_file(path));
  }
}

TEST(Corpus, WriteThenCompareRoundTrips) {
  const auto dir = scratch_dir("corpus_roundtrip");
  write_corpus(dir);
  EXPECT_TRUE(corpus_mismatches(dir).empty());
  for (const auto& d : corpus_distributions()) {
    EXPECT_EQ(read_pmf_file(dir / (d.name + ".pmf")), d.pmf) << d.name;
  }
  {
    std::ofstream(dir / "xor.pmf", std::ios::app) << "# edited\n";
  }
  const auto stale = corpus_mismatches(dir);
  ASSERT_EQ(stale.size(), 1u);
  EXPECT_EQ(stale.front(), "xor.pmf");
  fs::remove_all(dir);
}

TEST(Corpus, ManifestIgnoresCommentsAndBlankLines) {
  const auto dir = scratch_dir("manifest");
  {
    std::ofstream(dir / "m.txt") << "# header\n\na.pmf  # first\nsub/b.pmf\n";
  }
  const auto listed = read_manifest(dir / "m.txt");
  ASSERT_EQ(listed.size(), 2u);
  EXPECT_EQ(listed[0], dir / "a.pmf");
  EXPECT_EQ(listed[1], dir / "sub/b.pmf");
  fs::remove_all(dir);
}

TEST(ReproductionSuite, EveryRowPasses) {
  const auto rows = run_reproduction_suite(default_corpus_dir());
  EXPECT_GE(rows.size(), 40u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.pass) << r.distribution << " " << r.measure << " measured " << r.measured
                        << " expected " << r.expected << " " << r.note;
  }
}

TEST(ReproductionSuite, CorruptedCorpusFails) {
  const auto dir = scratch_dir("corrupted");
  write_corpus(dir);
  {
    std::ofstream out(dir / "xor.pmf");
    out << "0 0 0 0.5\n1 1 0 0.5\n";
  }
  const auto rows = run_reproduction_suite(dir);
  const bool flagged = std::any_of(rows.begin(), rows.end(), [](const SuiteRow& r) {
    return r.distribution == "xor" && r.measure == "corpus" && !r.pass;
  });
  EXPECT_TRUE(flagged);
  fs::remove_all(dir);
}
