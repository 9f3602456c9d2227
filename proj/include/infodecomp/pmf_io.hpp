#pragma once

// Text format for joint pmfs: one record per line, whitespace-separated symbol
// labels followed by a decimal probability. '#' starts a comment, unlisted
// cells are zero and the arity is the column count minus one. Symbols are
// ordered by first appearance.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "infodecomp/prob.hpp"

namespace infodecomp {

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

JointPMF parse_pmf(std::istream& in, const std::string& source = "<input>");
JointPMF parse_pmf_string(const std::string& text);
JointPMF read_pmf_file(const std::filesystem::path& path);

/// Writes every cell (zeros included) in row-major order so that parsing the
/// output reproduces the alphabets, their order and the masses bit-exactly.
void write_pmf(std::ostream& out, const JointPMF& p);
std::string format_pmf(const JointPMF& p);
void write_pmf_file(const std::filesystem::path& path, const JointPMF& p);

/// Stochastic matrix block: a header row of output labels, then one row per input.
void write_channel(std::ostream& out, const Channel& c);

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

}  // namespace infodecomp
