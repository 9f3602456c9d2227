#include "infodecomp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "infodecomp/bottleneck.hpp"
#include "infodecomp/common_info.hpp"
#include "infodecomp/lattice.hpp"
#include "infodecomp/oracle.hpp"
#include "infodecomp/pid.hpp"
#include "infodecomp/pmf_io.hpp"
#include "infodecomp/secrecy.hpp"
#include "infodecomp/zero_error.hpp"

namespace infodecomp {

namespace {

using Value = std::variant<double, long long, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

std::string text_of(const Value& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

nlohmann::ordered_json json_of(const Value& v) {
  return std::visit([](const auto& x) { return nlohmann::ordered_json(x); }, v);
}

class Report {
 public:
  void set(const std::string& key, Value v) { fields_.emplace_back(key, std::move(v)); }
  void count(const std::string& key, std::size_t n) { set(key, static_cast<long long>(n)); }

  void opt(const std::string& prefix, const OptReport& r) {
    set(prefix, r.value);
    set(prefix + ".bound", std::string(to_string(r.bound_kind)));
    set(prefix + ".converged", r.converged);
    count(prefix + ".restarts", r.restarts_run);
    set(prefix + ".violation", r.constraint_violation);
    set(prefix + ".achieved_by", r.achieved_by);
    converged_ = converged_ && r.converged;
  }

  void flag_not_converged() { converged_ = false; }
  bool converged() const { return converged_; }
  void fail() { failed_ = true; }
  bool failed() const { return failed_; }

  Table& table(std::string name, std::vector<std::string> columns) {
    tables_.push_back({std::move(name), std::move(columns), {}});
    return tables_.back();
  }

  void block(std::string name, std::string text) { blocks_.emplace_back(std::move(name), std::move(text)); }

  void emit(std::ostream& out, OutputFormat format, const std::string& command,
            std::uint64_t seed) const {
    if (format == OutputFormat::tsv) {
      out << "# infodecomp " << command << "\tseed=" << seed << "\n";
      for (const auto& [k, v] : fields_) out << k << "\t" << text_of(v) << "\n";
      for (const auto& t : tables_) {
        out << "\n# " << t.name << "\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "\t" : "") << t.columns[c];
        out << "\n";
        for (const auto& row : t.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << text_of(row[c]);
          out << "\n";
        }
      }
      for (const auto& [name, text] : blocks_) out << "\n# " << name << "\n" << text;
      return;
    }
    nlohmann::ordered_json j;
    j["command"] = command;
    j["seed"] = seed;
    for (const auto& [k, v] : fields_) j[k] = json_of(v);
    for (const auto& t : tables_) {
      auto rows = nlohmann::ordered_json::array();
      for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t c = 0; c < row.size(); ++c) r[t.columns[c]] = json_of(row[c]);
        rows.push_back(std::move(r));
      }
      j[t.name] = std::move(rows);
    }
    for (const auto& [name, text] : blocks_) {
      auto lines = nlohmann::ordered_json::array();
      std::istringstream in(text);
      for (std::string line; std::getline(in, line);) lines.push_back(line);
      j[name] = std::move(lines);
    }
    out << j.dump(2) << "\n";
  }

 private:
  std::vector<std::pair<std::string, Value>> fields_;
  std::vector<Table> tables_;
  std::vector<std::pair<std::string, std::string>> blocks_;
  bool converged_ = true;
  bool failed_ = false;
};

std::string var_name(std::size_t arity, std::size_t i) {
  if (arity == 1) return "X";
  if (arity == 2) return i == 0 ? "X" : "Y";
  return i + 1 == arity ? "Y" : "X" + std::to_string(i + 1);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

JointPMF load_pmf(const RunConfig& c) {
  if (c.inputs.empty()) throw ValidationError(c.command + " needs --input");
  return read_pmf_file(c.inputs.front());
}

void require_arity(const JointPMF& p, std::size_t lo, std::size_t hi, const std::string& command) {
  if (p.arity() < lo || p.arity() > hi) {
    throw ValidationError(command + ": unsupported number of variables (" +
                          std::to_string(p.arity()) + ")");
  }
}

RestartOptions restarts(const RunConfig& c, std::size_t fallback = 32) {
  return {c.restarts.value_or(fallback), c.seed};
}

std::pair<Partition, Partition> load_partitions(const RunConfig& c) {
  if (!c.x_partition || !c.y_partition) throw ValidationError(c.command + " needs --x and --y");
  if (c.space) {
    auto space = SampleSpace::from_chars(*c.space);
    return {Partition::parse(space, *c.x_partition), Partition::parse(space, *c.y_partition)};
  }
  Partition x = parse_partition_lines(read_text(*c.x_partition));
  Partition y = parse_partition_lines(read_text(*c.y_partition), x.space_ptr());
  return {std::move(x), std::move(y)};
}

std::string channel_text(const Channel& ch) {
  std::ostringstream s;
  write_channel(s, ch);
  return s.str();
}

void oracle_delta(Report& r, const std::string& key, double value, const oracle::GridResult& g) {
  r.set(key + ".oracle", g.value);
  r.set(key + ".oracle_delta", value - g.value);
}

// Commands ----------------------------------------------------------------------

void cmd_entropy(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  r.set("H", joint_entropy(p));
  for (std::size_t i = 0; i < p.arity(); ++i) {
    r.set("H(" + var_name(p.arity(), i) + ")", entropy(p, {i}));
  }
}

void cmd_mi(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, kMaxArity, c.command);
  if (p.arity() == 2) {
    r.set("I(X;Y)", mutual_information(p));
    return;
  }
  const std::size_t y = p.arity() - 1;
  VarList preds;
  std::string joint;
  for (std::size_t i = 0; i < y; ++i) {
    r.set("I(" + var_name(p.arity(), i) + ";Y)", mutual_information(p, {i}, {y}));
    preds.push_back(i);
    joint += var_name(p.arity(), i);
  }
  r.set("I(" + joint + ";Y)", mutual_information(p, preds, {y}));
}

void cmd_cmi(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  r.set("I(X1;X2|Y)", conditional_mutual_information(p, {0}, {1}, {2}));
  r.set("I(X1;Y|X2)", conditional_mutual_information(p, {0}, {2}, {1}));
  r.set("I(X2;Y|X1)", conditional_mutual_information(p, {1}, {2}, {0}));
}

void cmd_gk(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, kMaxArity, c.command);
  r.set("C_GK", gk_common_information(p));
  if (p.arity() == 2) {
    const auto mdc = mdc_decompose(p);
    r.count("components", mdc.size());
    r.set("I(X;Y)", mutual_information(p));
    r.set("resolvable", is_perfectly_resolvable(p));
    r.set("residual", residual_information(p));
    auto& t = r.table("components_detail", {"component", "mass", "xs", "ys", "zic"});
    for (std::size_t k = 0; k < mdc.size(); ++k) {
      std::string xs, ys;
      for (auto x : mdc.components[k].xs) xs += (xs.empty() ? "" : ",") + p.alphabet(0).label(x);
      for (auto y : mdc.components[k].ys) ys += (ys.empty() ? "" : ",") + p.alphabet(1).label(y);
      t.rows.push_back({static_cast<long long>(k), mdc.components[k].mass, xs, ys, is_zic(k, p)});
    }
  } else {
    VarList all(p.arity());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    r.count("components", support_meet(p, all).masses.size());
  }
}

void cmd_wyner(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, 3, c.command);
  const auto w = wyner_common_information(p, c.q_card, restarts(c));
  r.opt("C_W", w);
  if (p.arity() == 2) r.set("I(X;Y)", mutual_information(p));
  if (c.oracle && p.arity() == 2 && p.dim(0) == 2 && p.dim(1) == 2) {
    oracle_delta(r, "C_W", w.value, oracle::wyner_grid(p));
  }
}

void cmd_cmin(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, 2, c.command);
  const auto m = min_assisted_common_information(p, c.q_card, restarts(c));
  r.opt("C_min", m);
  if (c.oracle && p.dim(0) == 2 && p.dim(1) == 2) {
    oracle_delta(r, "C_min", m.value, oracle::cmin_grid(p));
  }
}

void cmd_intrinsic(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  const auto in = intrinsic_information(p, c.yprime_card, restarts(c));
  r.opt("intrinsic", in);
  r.set("I(X1;X2|Y)", conditional_mutual_information(p, {0}, {1}, {2}));
  if (c.oracle && p.dim(2) == 2 && c.yprime_card.value_or(2) == 2) {
    oracle_delta(r, "intrinsic", in.value, oracle::intrinsic_grid(p));
  }
  r.block("channel", channel_text(std::get<Channel>(in.achiever)));
}

void cmd_union(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  const auto u = union_information(p, restarts(c, 16));
  r.opt("union", u);
  r.set("I(X1X2;Y)", mutual_information(p, {0, 1}, {2}));
  if (c.oracle && p.dim(0) == 2 && p.dim(1) == 2 && p.dim(2) == 2) {
    oracle_delta(r, "union", u.value, oracle::union_grid(p));
  }
  r.block("achiever", format_pmf(std::get<JointPMF>(u.achiever)));
}

void cmd_synergy(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  const auto s = synergy_gk(p, restarts(c));
  r.set("via_intrinsic", s.via_intrinsic);
  r.set("via_union", s.via_union);
  r.set("gap", s.gap);
  r.set("clamped", s.clamped);
  r.opt("intrinsic", s.intrinsic);
  r.opt("union", s.union_info);
  if (c.oracle && p.dim(2) == 2) {
    const double cmi = conditional_mutual_information(p, {0}, {1}, {2});
    oracle_delta(r, "via_intrinsic", s.via_intrinsic, {cmi - oracle::intrinsic_grid(p).value, {}, 0});
    if (p.dim(0) == 2 && p.dim(1) == 2) {
      const double whole = mutual_information(p, {0, 1}, {2});
      oracle_delta(r, "via_union", s.via_union, {whole - oracle::union_grid(p).value, {}, 0});
    }
  }
}

void cmd_pid(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  const auto red = gk_redundancy(p);
  const auto atoms = pid_atoms(p, red.i_bits);
  r.set("measure", std::string("gk"));
  r.set("redundant", atoms.redundant);
  r.set("unique1", atoms.unique1);
  r.set("unique2", atoms.unique2);
  r.set("synergistic", atoms.synergistic);
  r.set("negative_synergy", atoms.negative_synergy);
}

void cmd_redundancy_gk(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, kMaxArity, c.command);
  const auto red = gk_redundancy(p);
  r.set("c_bits", red.c_bits);
  r.set("i_bits", red.i_bits);
  VarList order(p.arity() - 1);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  r.set("meet", predictor_meet(p, order).to_string());
}

void cmd_cond_gk(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  const auto opts = restarts(c);
  const auto c1 = conditional_gk(permute(p, {2, 0, 1}), c.q_card, opts);
  const auto c2 = conditional_gk(permute(p, {2, 1, 0}), c.q_card, opts);
  r.opt("C_GK(Y;X1|X2)", c1);
  r.opt("C_GK(Y;X2|X1)", c2);
  const double i1 = mutual_information(p, {2}, {0});
  const double i2 = mutual_information(p, {2}, {1});
  r.set("chain_residual", std::abs(i1 + c2.value - i2 - c1.value));
  if (c.oracle) {
    const std::size_t dy = p.dim(2);
    auto try_oracle = [&](const std::string& key, const OptReport& rep, const VarList& order,
                          std::size_t d_other, std::size_t d_pred) {
      const std::size_t m = c.q_card.value_or(std::min(dy, d_pred));
      if (std::pow(static_cast<double>(m), static_cast<double>(dy * d_other)) > 1e6) return;
      oracle_delta(r, key, rep.value, oracle::conditional_gk_deterministic(permute(p, order), m));
    };
    try_oracle("C_GK(Y;X1|X2)", c1, {2, 0, 1}, p.dim(1), p.dim(0));
    try_oracle("C_GK(Y;X2|X1)", c2, {2, 1, 0}, p.dim(0), p.dim(1));
  }
}

void cmd_coloring(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, 2, c.command);
  const auto g = characteristic_graph(p);
  const bool exact = g.vertices.size() <= kMaxExactColoringVertices;
  const auto res = chromatic_color(g, {exact, !exact});
  r.count("vertices", g.vertices.size());
  r.count("edges", g.edges.size());
  r.count("colors", res.coloring.num_colors);
  r.set("bound", std::string(to_string(res.bound_kind)));
  if (exact) r.count("minimal_colorings", res.all_minimal.size());
  if (c.oracle && g.vertices.size() <= oracle::kMaxBruteForceVertices) {
    r.count("colors.oracle", oracle::chromatic_number(g));
  }
  auto& t = r.table("coloring", {"vertex", "color"});
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    t.rows.push_back({g.vertices.label(v), static_cast<long long>(res.coloring.color_of[v])});
  }
}

void emit_witsenhausen(Report& r, const WitsenhausenResult& w) {
  r.count("colors", w.num_colors);
  r.set("partition", w.partition.to_string());
  r.count("minimal_partitions", w.all_minimal.size());
  auto& t = r.table("all_minimal", {"index", "partition"});
  for (std::size_t i = 0; i < w.all_minimal.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i), w.all_minimal[i].to_string()});
  }
}

void cmd_witsenhausen(const RunConfig& c, Report& r) {
  if (c.x_partition || c.y_partition) {
    const auto [x, y] = load_partitions(c);
    const auto w = witsenhausen_private(x, y);
    emit_witsenhausen(r, w);
    r.set("join_check", equivalent_on_support(join(w.partition, y), join(x, y)));
    return;
  }
  const auto p = load_pmf(c);
  require_arity(p, 2, 2, c.command);
  emit_witsenhausen(r, witsenhausen_private(p));
}

void cmd_hexner_yo(const RunConfig& c, Report& r) {
  const auto [x, y] = load_partitions(c);
  const auto sols = hexner_yo_private(x, y);
  const auto xy = meet(x, y);
  r.count("blocks", sols.empty() ? 0 : sols.front().num_blocks());
  r.count("solutions", sols.size());
  auto& t = r.table("minimal", {"index", "partition", "recovers_x", "recovers_xy"});
  for (std::size_t i = 0; i < sols.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i), sols[i].to_string(), join(sols[i], xy) == x,
                      join(sols[i], y) == join(x, y)});
  }
}

void cmd_lattice(const RunConfig& c, Report& r) {
  const auto [x, y] = load_partitions(c);
  const auto m = meet(x, y);
  const auto j = join(x, y);
  r.set("meet", m.to_string());
  r.set("join", j.to_string());
  r.set("x_richer_than_y", is_richer(x, y));
  r.set("y_richer_than_x", is_richer(y, x));
  if (x.space().has_weights()) {
    r.set("H(X)", partition_entropy(x));
    r.set("H(Y)", partition_entropy(y));
    r.set("H(meet)", partition_entropy(m));
    r.set("H(join)", partition_entropy(j));
  }
}

void cmd_cib(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  if (!c.beta) throw ValidationError("cib needs --beta");
  const auto s = cib_optimize(p, *c.beta, {c.t_card, c.restarts.value_or(8), c.seed});
  r.set("beta", s.beta);
  r.set("compression", s.compression);
  r.set("relevance", s.relevance);
  r.set("objective", s.objective);
  r.set("I(X1;Y|X2)", conditional_mutual_information(p, {0}, {2}, {1}));
  r.set("traces_monotone", s.traces_monotone);
  r.set("converged", s.converged);
  r.count("restarts", s.restarts_run);
  if (!s.converged) r.flag_not_converged();
  r.block("encoder", channel_text(s.encoder));
}

void cmd_sweep(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  if (c.betas.empty()) throw ValidationError("sweep needs --betas");
  const auto sols = beta_sweep(p, c.betas, {c.t_card, c.restarts.value_or(8), c.seed});
  auto& t = r.table("curve", {"beta", "compression", "relevance", "objective"});
  bool monotone = true, converged = true;
  for (const auto& s : sols) {
    t.rows.push_back({s.beta, s.compression, s.relevance, s.objective});
    monotone = monotone && s.traces_monotone;
    converged = converged && s.converged;
  }
  r.set("traces_monotone", monotone);
  r.set("converged", converged);
  if (!converged) r.flag_not_converged();
  r.block("encoder", channel_text(sols.back().encoder));
}

void cmd_battery(const RunConfig& c, Report& r) {
  if (c.output) {
    write_corpus(*c.output);
    r.set("written", c.output->string());
    auto& t = r.table("files", {"file"});
    for (const auto& f : corpus_files()) t.rows.push_back({f.name});
    return;
  }
  const auto dir = c.corpus.value_or(default_corpus_dir());
  const auto rows = run_reproduction_suite(dir, restarts(c));
  std::size_t failed = 0;
  auto& t = r.table("suite", {"distribution", "measure", "measured", "expected", "tolerance",
                              "basis", "status", "note"});
  for (const auto& row : rows) {
    if (!row.pass) ++failed;
    t.rows.push_back({row.distribution, row.measure, row.measured, row.expected, row.tolerance,
                      std::string(to_string(row.basis)), std::string(row.pass ? "PASS" : "FAIL"),
                      row.note});
  }
  r.set("corpus", dir.string());
  r.count("rows", rows.size());
  r.count("failed", failed);
  if (failed > 0) r.fail();
}

void cmd_check(const RunConfig& c, Report& r) {
  std::vector<std::filesystem::path> files;
  for (const auto& in : c.inputs) {
    if (in.filename() == "manifest.txt") {
      for (auto& f : read_manifest(in)) files.push_back(std::move(f));
    } else {
      files.push_back(in);
    }
  }
  auto& t = r.table("files", {"file", "status", "detail"});
  std::size_t bad = 0;
  if (files.empty()) {
    const auto dir = c.corpus.value_or(default_corpus_dir());
    const auto mismatches = corpus_mismatches(dir);
    r.set("corpus", dir.string());
    for (const auto& f : corpus_files()) {
      const bool ok = std::find(mismatches.begin(), mismatches.end(), f.name) == mismatches.end();
      t.rows.push_back({f.name, std::string(ok ? "ok" : "mismatch"), std::string()});
    }
    bad = mismatches.size();
  } else {
    for (const auto& f : files) {
      try {
        const auto p = read_pmf_file(f);
        std::string shape;
        for (std::size_t i = 0; i < p.arity(); ++i) shape += (i ? "x" : "") + std::to_string(p.dim(i));
        t.rows.push_back({f.string(), std::string("ok"), shape});
      } catch (const ValidationError& e) {
        ++bad;
        t.rows.push_back({f.string(), std::string("invalid"), std::string(e.what())});
      }
    }
  }
  r.count("invalid", bad);
  if (bad > 0) r.fail();
}

void cmd_lockability(const RunConfig& c, Report& r) {
  const auto ext = load_pmf(c);
  require_arity(ext, 4, 4, c.command);
  const auto base = marginalize(ext, {0, 1, 2});
  const auto l = lockability_bound_check(base, ext, true, restarts(c));
  r.set("I(X1;X2|YY1)", l.cmi_with);
  r.set("I(X1;X2|Y)", l.cmi_without);
  r.set("difference", l.cmi_difference);
  r.set("H(Y1)", l.bound);
  r.set("holds", l.holds);
  if (l.synergy_difference) r.set("synergy_difference", *l.synergy_difference);
}

void cmd_axioms(const RunConfig& c, Report& r) {
  std::vector<JointPMF> pmfs;
  for (const auto& in : c.inputs) pmfs.push_back(read_pmf_file(in));
  if (pmfs.empty()) {
    for (auto& d : standard_battery()) pmfs.push_back(std::move(d.pmf));
    pmfs.push_back(make_xor_chain().pmf);
  }
  const auto rep = check_wb_axioms(gk_redundancy_measure(), pmfs);
  r.set("measure", rep.measure);
  r.count("pmfs", rep.pmfs_checked);
  r.count("violations", rep.violations.size());
  auto& t = r.table("violations_detail", {"pmf", "axiom", "detail"});
  for (const auto& v : rep.violations) {
    t.rows.push_back({static_cast<long long>(v.pmf_index), v.axiom, v.detail});
  }
}

void cmd_consistency(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 3, 3, c.command);
  const auto opts = restarts(c);
  for (const auto& u : {conditional_mi_unique(), intrinsic_unique(opts), conditional_gk_unique(opts)}) {
    r.set(u.name, consistency_residual(u, p));
  }
  if (c.oracle && p.dim(0) == 2 && p.dim(1) == 2 && p.dim(2) == 2) {
    const double u1 = oracle::intrinsic_grid(permute(p, {2, 0, 1})).value;
    const double u2 = oracle::intrinsic_grid(permute(p, {2, 1, 0})).value;
    r.set("intrinsic.oracle", std::abs(mutual_information(p, {2}, {0}) + u2 -
                                       mutual_information(p, {2}, {1}) - u1));
  }
}

void cmd_ordering(const RunConfig& c, Report& r) {
  const auto p = load_pmf(c);
  require_arity(p, 2, 3, c.command);
  const auto o = check_ci_ordering(p, restarts(c));
  r.set("C_GK", o.gk);
  r.set("I", o.mi);
  r.set("C_W_upper", o.wyner_upper);
  if (o.arity == 3) {
    r.set("C_GK(all)", o.gk_all);
    r.set("min_pairwise_I", o.min_pairwise_mi);
    r.set("max_pairwise_I", o.max_pairwise_mi);
    r.set("C_W_upper(all)", o.wyner_all_upper);
  }
  r.set("holds", o.holds);
  auto& t = r.table("violations", {"detail"});
  for (const auto& v : o.violations) t.rows.push_back({v});
  if (!o.holds) r.fail();
}

using Handler = void (*)(const RunConfig&, Report&);

const std::vector<std::pair<std::string_view, Handler>>& handlers() {
  static const std::vector<std::pair<std::string_view, Handler>> table{
      {"entropy", cmd_entropy},
      {"mi", cmd_mi},
      {"cmi", cmd_cmi},
      {"gk", cmd_gk},
      {"wyner", cmd_wyner},
      {"cmin", cmd_cmin},
      {"intrinsic", cmd_intrinsic},
      {"union", cmd_union},
      {"synergy", cmd_synergy},
      {"pid", cmd_pid},
      {"redundancy-gk", cmd_redundancy_gk},
      {"cond-gk", cmd_cond_gk},
      {"coloring", cmd_coloring},
      {"witsenhausen", cmd_witsenhausen},
      {"hexner-yo", cmd_hexner_yo},
      {"cib", cmd_cib},
      {"sweep", cmd_sweep},
      {"battery", cmd_battery},
      {"check", cmd_check},
      {"lattice", cmd_lattice},
      {"lockability", cmd_lockability},
      {"axioms", cmd_axioms},
      {"consistency", cmd_consistency},
      {"ordering", cmd_ordering},
  };
  return table;
}

// Reproduction suite ------------------------------------------------------------

struct SuiteInput {
  const JointPMF& pmf;
  const std::optional<std::pair<Partition, Partition>>& partitions;
  RestartOptions options;

  const std::pair<Partition, Partition>& parts() const {
    if (!partitions) throw ValidationError("measure needs a partition pair");
    return *partitions;
  }
};

using Evaluator = std::function<double(const SuiteInput&)>;

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table{
      {"H(Y)", [](const SuiteInput& s) { return entropy(s.pmf, {s.pmf.arity() - 1}); }},
      {"I(X;Y)", [](const SuiteInput& s) { return mutual_information(s.pmf); }},
      {"I(X1;X2)", [](const SuiteInput& s) { return mutual_information(s.pmf, {0}, {1}); }},
      {"I(X1;Y)", [](const SuiteInput& s) { return mutual_information(s.pmf, {0}, {2}); }},
      {"I(X2;Y)", [](const SuiteInput& s) { return mutual_information(s.pmf, {1}, {2}); }},
      {"I(X1X2;Y)", [](const SuiteInput& s) { return mutual_information(s.pmf, {0, 1}, {2}); }},
      {"I(X1;X2|Y)",
       [](const SuiteInput& s) { return conditional_mutual_information(s.pmf, {0}, {1}, {2}); }},
      {"C_GK", [](const SuiteInput& s) { return gk_common_information(s.pmf); }},
      {"mdc_count",
       [](const SuiteInput& s) { return static_cast<double>(mdc_decompose(s.pmf).size()); }},
      {"resolvable", [](const SuiteInput& s) { return is_perfectly_resolvable(s.pmf) ? 1.0 : 0.0; }},
      {"residual", [](const SuiteInput& s) { return residual_information(s.pmf); }},
      {"intrinsic",
       [](const SuiteInput& s) { return intrinsic_information(s.pmf, {}, s.options).value; }},
      {"union",
       [](const SuiteInput& s) { return union_information(s.pmf, {16, s.options.seed}).value; }},
      {"synergy_via_intrinsic",
       [](const SuiteInput& s) { return synergy_gk(s.pmf, s.options).via_intrinsic; }},
      {"synergy_via_union",
       [](const SuiteInput& s) { return synergy_gk(s.pmf, s.options).via_union; }},
      {"cond_gk(Y;X1|X2)",
       [](const SuiteInput& s) {
         return conditional_gk(permute(s.pmf, {2, 0, 1}), {}, s.options).value;
       }},
      {"cond_gk(Y;X2|X1)",
       [](const SuiteInput& s) {
         return conditional_gk(permute(s.pmf, {2, 1, 0}), {}, s.options).value;
       }},
      {"gk_redundancy", [](const SuiteInput& s) { return gk_redundancy(s.pmf).i_bits; }},
      {"chromatic_number",
       [](const SuiteInput& s) {
         const auto& [x, y] = s.parts();
         return static_cast<double>(witsenhausen_private(x, y, false).num_colors);
       }},
      {"hexner_yo_min_blocks",
       [](const SuiteInput& s) {
         const auto& [x, y] = s.parts();
         const auto sols = hexner_yo_private(x, y);
         return sols.empty() ? 0.0 : static_cast<double>(sols.front().num_blocks());
       }},
      {"hexner_yo_reference_found",
       [](const SuiteInput& s) {
         const auto& [x, y] = s.parts();
         const auto sols = hexner_yo_private(x, y);
         for (auto ref : kHexnerYoReferenceSolutions) {
           const auto want = Partition::parse(x.space_ptr(), ref);
           if (std::find(sols.begin(), sols.end(), want) == sols.end()) return 0.0;
         }
         return 1.0;
       }},
  };
  return table;
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto& table = handlers();
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const auto& e) { return e.first == config.command; });
  if (it == table.end()) {
    err << "error: unknown command '" << config.command << "'\n";
    return kExitValidation;
  }
  Report report;
  try {
    it->second(config, report);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitValidation;
  }
  report.emit(out, config.format, config.command, config.seed);
  if (report.failed()) return kExitValidation;
  return report.converged() ? kExitOk : kExitNotConverged;
}

std::vector<std::string> suite_measures() {
  std::vector<std::string> out;
  for (const auto& [name, e] : evaluators()) out.push_back(name);
  return out;
}

std::vector<SuiteRow> run_reproduction_suite(const std::filesystem::path& corpus_dir,
                                             RestartOptions options) {
  std::vector<SuiteRow> rows;
  for (const auto& d : corpus_distributions()) {
    if (d.expected.empty()) continue;
    std::optional<JointPMF> pmf;
    std::optional<std::pair<Partition, Partition>> parts;
    try {
      pmf = read_pmf_file(corpus_dir / (d.name + ".pmf"));
      if (pmf->alphabets() != d.pmf.alphabets() || max_abs_difference(*pmf, d.pmf) != 0.0) {
        throw ValidationError("content differs from the generator");
      }
      if (d.partitions) {
        Partition x = parse_partition_lines(read_text(corpus_dir / (d.name + "_x.part")));
        Partition y =
            parse_partition_lines(read_text(corpus_dir / (d.name + "_y.part")), x.space_ptr());
        if (x.to_string() != d.partitions->first.to_string() ||
            y.to_string() != d.partitions->second.to_string()) {
          throw ValidationError("partition files differ from the generator");
        }
        parts.emplace(std::move(x), std::move(y));
      }
    } catch (const ValidationError& e) {
      rows.push_back({d.name, "corpus", 0.0, 0.0, 0.0, Basis::trivial, false, e.what()});
      continue;
    }
    for (const auto& e : d.expected) {
      SuiteRow row{d.name, e.measure, 0.0, e.value, e.tolerance, e.basis, false, {}};
      const auto ev = evaluators().find(e.measure);
      if (ev == evaluators().end()) {
        row.note = "unknown measure";
      } else {
        try {
          row.measured = ev->second(SuiteInput{*pmf, parts, options});
          row.pass = std::abs(row.measured - row.expected) <= row.tolerance;
        } catch (const std::exception& ex) {
          row.note = ex.what();
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace infodecomp
