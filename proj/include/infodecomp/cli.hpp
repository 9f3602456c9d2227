#pragma once

// Command dispatch behind the infodecomp tool, and the reproduction suite that
// replays every stored expectation against the on-disk corpus.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infodecomp/battery.hpp"
#include "infodecomp/optim.hpp"

namespace infodecomp {

enum class OutputFormat { tsv, report };

struct RunConfig {
  std::string command;
  std::vector<std::filesystem::path> inputs;
  std::uint64_t seed = 0;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> q_card;
  std::optional<std::size_t> t_card;
  std::optional<std::size_t> yprime_card;
  std::optional<double> beta;
  std::vector<double> betas;
  bool oracle = false;
  OutputFormat format = OutputFormat::report;
  /// Partitions for the lattice commands: files of `label:block` lines, or block
  /// notation when `space` lists the sample-space characters.
  std::optional<std::string> x_partition;
  std::optional<std::string> y_partition;
  std::optional<std::string> space;
  /// Directory to write the corpus to (battery).
  std::optional<std::filesystem::path> output;
  /// Corpus directory; defaults to default_corpus_dir().
  std::optional<std::filesystem::path> corpus;
};

/// Every command name accepted by run().
const std::vector<std::string_view>& command_names();

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNotConverged = 2;

/// Runs one command and writes its report to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SuiteRow {
  std::string distribution;
  std::string measure;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Basis basis = Basis::reference;
  bool pass = false;
  std::string note;  // validation failure or other diagnostic
};

/// One row per expectation of every corpus distribution, evaluated on the pmf
/// read back from `corpus_dir`. A file that fails to parse or differs from the
/// regenerated pmf yields a failing "corpus" row.
std::vector<SuiteRow> run_reproduction_suite(const std::filesystem::path& corpus_dir,
                                             RestartOptions options = {});

/// The measure names understood by the suite.
std::vector<std::string> suite_measures();

}  // namespace infodecomp
