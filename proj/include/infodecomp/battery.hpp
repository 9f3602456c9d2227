#pragma once

// Named example distributions, random families for property tests and the
// on-disk corpus that mirrors them.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infodecomp/lattice.hpp"
#include "infodecomp/prob.hpp"

namespace infodecomp {

enum class Source { worked_example, constructed };

/// How an expected value is known: quoted from the reference example, true by
/// construction, or computed independently (closed form or exhaustive search).
enum class Basis { reference, trivial, derived };

std::string_view to_string(Source s);
std::string_view to_string(Basis b);

struct Expectation {
  std::string measure;
  double value;
  double tolerance;
  Basis basis;
};

struct NamedDistribution {
  std::string name;
  JointPMF pmf;
  Source source = Source::constructed;
  std::vector<Expectation> expected;
  /// The (X, Y) partition pair for examples defined on a sample space.
  std::optional<std::pair<Partition, Partition>> partitions;
};

// Worked examples -------------------------------------------------------------

/// Y = X1 xor X2 with independent uniform bits; variables (X1, X2, Y).
NamedDistribution make_xor();
/// Two near-components: X = (U, Q), Y = (Q, V) with U, Q, V bits; the cells with
/// matching Q carry (1 - delta)/8 each, the others delta/8.
NamedDistribution make_noisy_blocks(double delta);
/// Y = (X1, X2) with independent uniform bits; variables (X1, X2, Y).
NamedDistribution make_copy_both();
/// Two noisy typewriters on 16 points, as a pmf over (X blocks, Y blocks) uniform on its edges.
NamedDistribution make_typewriter_pair();
/// The six-point partition pair with two minimal private parts.
NamedDistribution make_hexner_yo();
/// The two minimal private parts listed for the six-point example.
inline constexpr std::string_view kHexnerYoReferenceSolutions[] = {"03|1245", "045|123"};

// Parameterized families ------------------------------------------------------

/// X uniform bit, Y = X through a binary symmetric channel.
NamedDistribution make_bsc(double crossover);
/// X = (U, Q), Y = (V, Q) with U, V, Q independent and uniform.
NamedDistribution make_decomposable(std::size_t u_card, std::size_t v_card, std::size_t q_card);
/// Predictors X1 = (Q, U), X2 = (Q, V) and target Y = Q, with Dirichlet-random
/// p(q) p(u|q) p(v|q); variables (X1, X2, Y).
NamedDistribution make_decomposable_target(std::uint64_t seed, std::size_t q_card = 2,
                                           std::size_t u_card = 2, std::size_t v_card = 2);
/// X1 random, X2 = X1 through a BSC with crossover in [0.05, 0.45], Y random given
/// (X1, X2). The predictor pair is indecomposable.
NamedDistribution make_bsc_coupled(std::uint64_t seed);
/// Dirichlet(1, ..., 1) over every cell of the given shape.
NamedDistribution make_random(std::uint64_t seed, const std::vector<std::size_t>& shape);
/// p(y) prod_i p(x_i | y) over (X1, ..., Xk, Y); each channel maps Y to X_i.
NamedDistribution make_cond_independent(const JointPMF& p_y, const std::vector<Channel>& channels);

// Small fixed examples ----------------------------------------------------------

NamedDistribution make_and();          // Y = X1 and X2
NamedDistribution make_redundant();    // Y = X1 = X2, one uniform bit
NamedDistribution make_independent();  // three independent uniform bits
NamedDistribution make_unique_copy();  // Y = X1, X2 independent of both
NamedDistribution make_three_copy();   // X1 = X2 = X3, one uniform bit
/// X1, X2 independent bits, X3 = X1 xor X2, Y = X1; variables (X1, X2, X3, Y).
NamedDistribution make_xor_chain();

/// Seed of the first random 2x2x2 pmf on which the intrinsic-information unique
/// measure breaks the chain-rule consistency by more than 1e-3.
inline constexpr std::uint64_t kConsistencyWitnessSeed = 0;
NamedDistribution make_consistency_witness();

/// Searches seeds start, start+1, ... of random 2x2x2 pmfs for a consistency
/// residual of the intrinsic unique information above `threshold`.
std::optional<std::uint64_t> search_consistency_witness(std::uint64_t start, std::size_t tries,
                                                        double threshold = 1e-3,
                                                        std::size_t restarts = 8);

/// Three-variable examples (X1, X2, Y) used for property checks.
std::vector<NamedDistribution> standard_battery();

// Corpus ----------------------------------------------------------------------

struct CorpusFile {
  std::string name;
  std::string content;
};

/// The distributions stored in the corpus, in manifest order.
std::vector<NamedDistribution> corpus_distributions();

/// Every corpus file with its exact content, manifest.txt last.
std::vector<CorpusFile> corpus_files();
void write_corpus(const std::filesystem::path& dir);
/// Corpus files whose on-disk content differs from the regenerated one (missing included).
std::vector<std::string> corpus_mismatches(const std::filesystem::path& dir);

/// $INFODECOMP_CORPUS when set, otherwise the directory configured at build time.
std::filesystem::path default_corpus_dir();

/// Pmf files listed in a manifest (one relative path per line, '#' comments).
std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest);

}  // namespace infodecomp
