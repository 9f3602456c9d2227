#include "infodecomp/pmf_io.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace infodecomp {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : ValidationError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

JointPMF parse_pmf(std::istream& in, const std::string& source) {
  std::vector<std::vector<std::string>> labels;  // per variable, first-appearance order
  std::vector<std::map<std::string, std::size_t, std::less<>>> lookup;
  struct Record {
    std::vector<std::size_t> index;
    double mass;
    std::size_t line;
  };
  std::vector<Record> records;
  std::size_t arity = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(std::move(t));
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw ParseError(source, lineno, "expected symbols followed by a probability");
    if (arity == 0) {
      arity = tokens.size() - 1;
      if (arity > kMaxArity) throw ParseError(source, lineno, "too many columns");
      labels.resize(arity);
      lookup.resize(arity);
    } else if (tokens.size() - 1 != arity) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(arity + 1) + " columns, found " +
                           std::to_string(tokens.size()));
    }
    const auto& num = tokens.back();
    double mass = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), mass);
    if (ec != std::errc() || ptr != num.data() + num.size()) {
      throw ParseError(source, lineno, "invalid probability '" + num + "'");
    }
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
      throw ParseError(source, lineno, "probability must be finite and non-negative");
    }
    Record rec{{}, mass, lineno};
    for (std::size_t v = 0; v < arity; ++v) {
      auto it = lookup[v].find(tokens[v]);
      if (it == lookup[v].end()) {
        it = lookup[v].emplace(tokens[v], labels[v].size()).first;
        labels[v].push_back(tokens[v]);
        if (labels[v].size() > kMaxAlphabetSize) {
          throw ParseError(source, lineno, "alphabet exceeds the symbol cap");
        }
      }
      rec.index.push_back(it->second);
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ParseError(source, lineno, "no records");

  std::vector<Alphabet> alphabets;
  std::size_t size = 1;
  for (auto& l : labels) {
    size *= l.size();
    alphabets.emplace_back(std::move(l));
  }
  std::vector<double> mass(size, 0.0);
  std::vector<bool> seen(size, false);
  for (const auto& r : records) {
    std::size_t flat = 0;
    for (std::size_t v = 0; v < arity; ++v) flat = flat * alphabets[v].size() + r.index[v];
    if (seen[flat]) throw ParseError(source, r.line, "duplicate cell");
    seen[flat] = true;
    mass[flat] = r.mass;
  }
  try {
    return JointPMF(std::move(alphabets), std::move(mass));
  } catch (const ValidationError& e) {
    throw ParseError(source, lineno, e.what());
  }
}

JointPMF parse_pmf_string(const std::string& text) {
  std::istringstream in(text);
  return parse_pmf(in, "<string>");
}

JointPMF read_pmf_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open pmf file " + path.string());
  return parse_pmf(in, path.string());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_pmf(std::ostream& out, const JointPMF& p) {
  for (std::size_t flat = 0; flat < p.size(); ++flat) {
    const auto idx = p.unflatten(flat);
    for (std::size_t v = 0; v < p.arity(); ++v) out << p.alphabet(v).label(idx[v]) << ' ';
    out << format_double(p.mass()[flat]) << '\n';
  }
}

std::string format_pmf(const JointPMF& p) {
  std::ostringstream out;
  write_pmf(out, p);
  return out.str();
}

void write_pmf_file(const std::filesystem::path& path, const JointPMF& p) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_pmf(out, p);
}

void write_channel(std::ostream& out, const Channel& c) {
  out << "in\\out";
  for (const auto& l : c.output().labels()) out << '\t' << l;
  out << '\n';
  for (std::size_t i = 0; i < c.input().size(); ++i) {
    out << c.input().label(i);
    for (std::size_t o = 0; o < c.output().size(); ++o) out << '\t' << format_double(c(i, o));
    out << '\n';
  }
}

}  // namespace infodecomp
