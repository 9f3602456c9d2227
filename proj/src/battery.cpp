#include "infodecomp/battery.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "detail/solvers.hpp"
#include "infodecomp/pid.hpp"
#include "infodecomp/pmf_io.hpp"
#include "infodecomp/zero_error.hpp"

#ifndef INFODECOMP_CORPUS_DIR
#define INFODECOMP_CORPUS_DIR "corpus/v1"
#endif

namespace infodecomp {

namespace {

Alphabet bits() { return Alphabet::range(2); }

std::string shape_name(const std::vector<std::size_t>& shape) {
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "x" : "") + std::to_string(shape[i]);
  return s;
}

double binary_entropy(double p) { return entropy(std::vector<double>{p, 1.0 - p}); }

Alphabet pair_alphabet(char a, std::size_t na, char b, std::size_t nb) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      labels.push_back(std::string(1, a) + std::to_string(i) + std::string(1, b) + std::to_string(j));
    }
  }
  return Alphabet(std::move(labels));
}

NamedDistribution from_partitions(std::string name, SpacePtr space, std::string_view x,
                                  std::string_view y) {
  Partition px = Partition::parse(space, x);
  Partition py = Partition::parse(space, y);
  NamedDistribution d{std::move(name), partition_pair_pmf(px, py), Source::worked_example, {}, {}};
  d.partitions.emplace(std::move(px), std::move(py));
  return d;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::string_view to_string(Source s) {
  return s == Source::worked_example ? "worked-example" : "constructed";
}

std::string_view to_string(Basis b) {
  switch (b) {
    case Basis::reference:
      return "reference";
    case Basis::trivial:
      return "trivial";
    case Basis::derived:
      return "derived";
  }
  return "unknown";
}

NamedDistribution make_xor() {
  JointPMF p({bits(), bits(), bits()}, {0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0});
  return {"xor",
          std::move(p),
          Source::worked_example,
          {{"I(X1;X2)", 0.0, 1e-9, Basis::reference},
           {"I(X1;Y)", 0.0, 1e-9, Basis::reference},
           {"I(X2;Y)", 0.0, 1e-9, Basis::reference},
           {"I(X1X2;Y)", 1.0, 1e-9, Basis::reference},
           {"I(X1;X2|Y)", 1.0, 1e-9, Basis::reference},
           {"H(Y)", 1.0, 1e-9, Basis::reference},
           {"intrinsic", 0.0, 1e-3, Basis::reference},
           {"synergy_via_intrinsic", 1.0, 1e-3, Basis::reference},
           {"synergy_via_union", 1.0, 1e-3, Basis::derived},
           {"union", 0.0, 1e-3, Basis::derived}},
          {}};
}

NamedDistribution make_noisy_blocks(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in [0, 1]");
  std::vector<double> mass(16);
  for (std::size_t u = 0; u < 2; ++u) {
    for (std::size_t qx = 0; qx < 2; ++qx) {
      for (std::size_t qy = 0; qy < 2; ++qy) {
        for (std::size_t v = 0; v < 2; ++v) {
          mass[(u * 2 + qx) * 4 + qy * 2 + v] = qx == qy ? (1.0 - delta) / 8.0 : delta / 8.0;
        }
      }
    }
  }
  JointPMF p({pair_alphabet('u', 2, 'q', 2), pair_alphabet('q', 2, 'v', 2)}, std::move(mass));
  const bool split = delta == 0.0;
  return {"noisy_blocks_" + format_double(delta),
          std::move(p),
          Source::worked_example,
          {{"C_GK", split ? 1.0 : 0.0, 0.0, Basis::reference},
           {"mdc_count", split ? 2.0 : 1.0, 0.0, Basis::reference}},
          {}};
}

NamedDistribution make_copy_both() {
  std::vector<double> mass(16, 0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) mass[(a * 2 + b) * 4 + a * 2 + b] = 0.25;
  }
  JointPMF p({bits(), bits(), Alphabet({"00", "01", "10", "11"})}, std::move(mass));
  return {"copy_both",
          std::move(p),
          Source::worked_example,
          {{"I(X1;Y)", 1.0, 1e-9, Basis::derived},
           {"I(X1;X2)", 0.0, 1e-9, Basis::reference},
           {"cond_gk(Y;X1|X2)", 1.0, 2e-3, Basis::reference},
           {"cond_gk(Y;X2|X1)", 1.0, 2e-3, Basis::reference}},
          {}};
}

NamedDistribution make_typewriter_pair() {
  auto d = from_partitions("typewriter", SampleSpace::from_chars("0123456789abcdef"),
                           "01|23|45|67|89|ab|cd|ef", "02|34|56|78|19|ac|de|bf");
  d.expected = {{"chromatic_number", 3.0, 0.0, Basis::reference},
                {"C_GK", binary_entropy(10.0 / 16.0), 1e-12, Basis::derived},
                {"mdc_count", 2.0, 0.0, Basis::reference}};
  return d;
}

NamedDistribution make_hexner_yo() {
  auto d = from_partitions("hexner_yo", SampleSpace::from_chars("012345"), "0|12|3|45",
                           "01|2|34|5");
  d.expected = {{"hexner_yo_min_blocks", 2.0, 0.0, Basis::reference},
                {"hexner_yo_reference_found", 1.0, 0.0, Basis::reference}};
  return d;
}

NamedDistribution make_bsc(double crossover) {
  if (!(crossover >= 0.0 && crossover <= 1.0)) throw ValidationError("crossover must lie in [0, 1]");
  const double c = crossover;
  JointPMF p({bits(), bits()}, {(1 - c) / 2, c / 2, c / 2, (1 - c) / 2});
  std::vector<Expectation> e{{"I(X;Y)", 1.0 - binary_entropy(c), 1e-12, Basis::derived}};
  if (c > 0.0 && c < 1.0) {
    e.push_back({"mdc_count", 1.0, 0.0, Basis::reference});
    e.push_back({"C_GK", 0.0, 0.0, Basis::reference});
  }
  return {"bsc_" + format_double(c), std::move(p), Source::constructed, std::move(e), {}};
}

NamedDistribution make_decomposable(std::size_t u_card, std::size_t v_card, std::size_t q_card) {
  if (u_card == 0 || v_card == 0 || q_card == 0) throw ValidationError("cardinalities must be positive");
  const auto xa = pair_alphabet('u', u_card, 'q', q_card);
  const auto ya = pair_alphabet('v', v_card, 'q', q_card);
  std::vector<double> mass(xa.size() * ya.size(), 0.0);
  const double m = 1.0 / static_cast<double>(u_card * v_card * q_card);
  for (std::size_t u = 0; u < u_card; ++u) {
    for (std::size_t v = 0; v < v_card; ++v) {
      for (std::size_t q = 0; q < q_card; ++q) {
        mass[(u * q_card + q) * ya.size() + v * q_card + q] = m;
      }
    }
  }
  JointPMF p({xa, ya}, std::move(mass));
  const double hq = std::log2(static_cast<double>(q_card));
  return {"decomposable_" + std::to_string(u_card) + "_" + std::to_string(v_card) + "_" +
              std::to_string(q_card),
          std::move(p),
          Source::worked_example,
          {{"C_GK", hq, 1e-12, Basis::reference},
           {"resolvable", 1.0, 0.0, Basis::reference},
           {"residual", 0.0, 1e-9, Basis::trivial}},
          {}};
}

NamedDistribution make_decomposable_target(std::uint64_t seed, std::size_t q_card,
                                           std::size_t u_card, std::size_t v_card) {
  detail::Rng rng(seed);
  const auto pq = rng.dirichlet(q_card);
  std::vector<std::vector<double>> pu, pv;
  for (std::size_t q = 0; q < q_card; ++q) pu.push_back(rng.dirichlet(u_card));
  for (std::size_t q = 0; q < q_card; ++q) pv.push_back(rng.dirichlet(v_card));
  const auto x1 = pair_alphabet('q', q_card, 'u', u_card);
  const auto x2 = pair_alphabet('q', q_card, 'v', v_card);
  std::vector<double> mass(x1.size() * x2.size() * q_card, 0.0);
  for (std::size_t q = 0; q < q_card; ++q) {
    for (std::size_t u = 0; u < u_card; ++u) {
      for (std::size_t v = 0; v < v_card; ++v) {
        const std::size_t a = q * u_card + u;
        const std::size_t b = q * v_card + v;
        mass[(a * x2.size() + b) * q_card + q] = pq[q] * pu[q][u] * pv[q][v];
      }
    }
  }
  JointPMF p({x1, x2, detail::indexed_alphabet("q", q_card)}, std::move(mass));
  const double hq = entropy(pq);
  return {"decomposable_target_" + std::to_string(seed), std::move(p), Source::constructed,
          {{"gk_redundancy", hq, 1e-9, Basis::derived}}, {}};
}

NamedDistribution make_bsc_coupled(std::uint64_t seed) {
  detail::Rng rng(seed);
  const auto px = rng.dirichlet(2);
  const double c = 0.05 + 0.4 * rng.uniform();
  std::vector<double> mass(8);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const auto py = rng.dirichlet(2);
      const double pab = px[a] * (a == b ? 1.0 - c : c);
      for (std::size_t y = 0; y < 2; ++y) mass[(a * 2 + b) * 2 + y] = pab * py[y];
    }
  }
  return {"bsc_coupled_" + std::to_string(seed), JointPMF({bits(), bits(), bits()}, std::move(mass)),
          Source::constructed, {{"gk_redundancy", 0.0, 1e-9, Basis::reference}}, {}};
}

NamedDistribution make_random(std::uint64_t seed, const std::vector<std::size_t>& shape) {
  if (shape.empty() || shape.size() > kMaxArity) throw ValidationError("unsupported shape");
  std::vector<Alphabet> alphabets;
  std::size_t n = 1;
  for (auto d : shape) {
    alphabets.push_back(Alphabet::range(d));
    n *= d;
  }
  detail::Rng rng(seed);
  return {"random_" + std::to_string(seed) + "_" + shape_name(shape),
          JointPMF(std::move(alphabets), rng.dirichlet(n)), Source::constructed, {}, {}};
}

NamedDistribution make_cond_independent(const JointPMF& p_y, const std::vector<Channel>& channels) {
  if (p_y.arity() != 1) throw ValidationError("p_y must be a one-variable pmf");
  if (channels.empty() || channels.size() + 1 > kMaxArity) {
    throw ValidationError("need one to three predictor channels");
  }
  std::vector<Alphabet> alphabets;
  std::vector<std::size_t> dims;
  for (const auto& c : channels) {
    if (c.input() != p_y.alphabet(0)) throw ValidationError("channel input must be the Y alphabet");
    alphabets.push_back(c.output());
    dims.push_back(c.output().size());
  }
  alphabets.push_back(p_y.alphabet(0));
  const std::size_t ny = p_y.dim(0);
  std::size_t nx = 1;
  for (auto d : dims) nx *= d;
  std::vector<double> mass(nx * ny);
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      double v = p_y.mass()[y];
      for (std::size_t k = 0; k < dims.size(); ++k) v *= channels[k](y, idx[k]);
      mass[x * ny + y] = v;
    }
    for (std::size_t k = dims.size(); k-- > 0;) {
      if (++idx[k] < dims[k]) break;
      idx[k] = 0;
    }
  }
  return {"cond_independent", JointPMF(std::move(alphabets), std::move(mass)), Source::constructed,
          {}, {}};
}

NamedDistribution make_and() {
  JointPMF p({bits(), bits(), bits()}, {0.25, 0, 0.25, 0, 0.25, 0, 0, 0.25});
  // The union value 0.311278 comes from the polytope grid oracle.
  return {"and",
          std::move(p),
          Source::constructed,
          {{"I(X1X2;Y)", binary_entropy(0.25), 1e-12, Basis::derived},
           {"synergy_via_union", 0.5, 1e-3, Basis::derived}},
          {}};
}

NamedDistribution make_redundant() {
  JointPMF p({bits(), bits(), bits()}, {0.5, 0, 0, 0, 0, 0, 0, 0.5});
  return {"redundant",
          std::move(p),
          Source::constructed,
          {{"gk_redundancy", 1.0, 1e-9, Basis::trivial},
           {"union", 1.0, 1e-3, Basis::derived},
           {"synergy_via_intrinsic", 0.0, 1e-3, Basis::derived},
           {"synergy_via_union", 0.0, 1e-3, Basis::derived}},
          {}};
}

NamedDistribution make_independent() {
  JointPMF p({bits(), bits(), bits()}, std::vector<double>(8, 0.125));
  return {"independent", std::move(p), Source::constructed, {{"union", 0.0, 1e-3, Basis::trivial}}, {}};
}

NamedDistribution make_unique_copy() {
  std::vector<double> mass(8, 0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) mass[(a * 2 + b) * 2 + a] = 0.25;
  }
  return {"unique_copy", JointPMF({bits(), bits(), bits()}, std::move(mass)), Source::constructed,
          {{"I(X1;Y)", 1.0, 1e-9, Basis::trivial}}, {}};
}

NamedDistribution make_three_copy() {
  JointPMF p({bits(), bits(), bits()}, {0.5, 0, 0, 0, 0, 0, 0, 0.5});
  return {"three_copy", std::move(p), Source::constructed, {}, {}};
}

NamedDistribution make_xor_chain() {
  std::vector<double> mass(16, 0.0);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) mass[((a * 2 + b) * 2 + (a ^ b)) * 2 + a] = 0.25;
  }
  return {"xor_chain", JointPMF({bits(), bits(), bits(), bits()}, std::move(mass)),
          Source::constructed, {}, {}};
}

NamedDistribution make_consistency_witness() {
  auto d = make_random(kConsistencyWitnessSeed, {2, 2, 2});
  d.name = "consistency_witness";
  return d;
}

std::optional<std::uint64_t> search_consistency_witness(std::uint64_t start, std::size_t tries,
                                                        double threshold, std::size_t restarts) {
  const auto u = intrinsic_unique({restarts, 0});
  for (std::uint64_t s = start; s < start + tries; ++s) {
    if (consistency_residual(u, make_random(s, {2, 2, 2}).pmf) > threshold) return s;
  }
  return std::nullopt;
}

std::vector<NamedDistribution> standard_battery() {
  std::vector<NamedDistribution> out{make_xor(),       make_and(),         make_copy_both(),
                                     make_redundant(), make_independent(), make_unique_copy(),
                                     make_three_copy(), make_decomposable_target(1),
                                     make_bsc_coupled(1), make_bsc_coupled(2)};
  for (std::uint64_t s = 1; s <= 4; ++s) out.push_back(make_random(s, {2, 2, 2}));
  out.push_back(make_consistency_witness());
  return out;
}

std::vector<NamedDistribution> corpus_distributions() {
  std::vector<NamedDistribution> dists{make_xor(),         make_and(),
                                       make_copy_both(),   make_redundant(),
                                       make_independent(), make_unique_copy(),
                                       make_three_copy(),  make_xor_chain(),
                                       make_bsc(0.1),      make_decomposable(2, 2, 2),
                                       make_typewriter_pair(), make_hexner_yo(),
                                       make_random(7, {2, 2, 2}), make_consistency_witness()};
  for (double delta : {0.0, 1e-6, 1e-3, 0.01, 0.05, 0.1, 0.5}) {
    dists.push_back(make_noisy_blocks(delta));
  }
  return dists;
}

std::vector<CorpusFile> corpus_files() {
  std::vector<CorpusFile> files;
  std::string manifest = "# pmf files of the example battery\n";
  for (const auto& d : corpus_distributions()) {
    const std::string file = d.name + ".pmf";
    files.push_back({file, "# " + d.name + "\n" + format_pmf(d.pmf)});
    manifest += file + "\n";
    if (d.partitions) {
      files.push_back({d.name + "_x.part", format_partition_lines(d.partitions->first)});
      files.push_back({d.name + "_y.part", format_partition_lines(d.partitions->second)});
    }
  }
  files.push_back({"manifest.txt", manifest});
  return files;
}

void write_corpus(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : corpus_files()) {
    std::ofstream out(dir / f.name, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + (dir / f.name).string());
    out << f.content;
  }
}

std::vector<std::string> corpus_mismatches(const std::filesystem::path& dir) {
  std::vector<std::string> bad;
  for (const auto& f : corpus_files()) {
    if (!std::filesystem::exists(dir / f.name) || read_file(dir / f.name) != f.content) {
      bad.push_back(f.name);
    }
  }
  return bad;
}

std::filesystem::path default_corpus_dir() {
  if (const char* env = std::getenv("INFODECOMP_CORPUS"); env && *env) return env;
  return INFODECOMP_CORPUS_DIR;
}

std::vector<std::filesystem::path> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw ValidationError("cannot read manifest " + manifest.string());
  std::vector<std::filesystem::path> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(manifest.parent_path() / line.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace infodecomp
