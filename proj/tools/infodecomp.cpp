#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "infodecomp/cli.hpp"

namespace {

std::vector<double> parse_betas(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace infodecomp;
  CLI::App app{"Information decomposition measures for finite joint pmfs"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig config;
  std::vector<std::string> inputs;
  std::string betas, format = "report", output, corpus;
  app.add_option("--input,-i", inputs, "pmf file (repeatable)");
  app.add_option("--seed", config.seed, "base seed; restart r uses seed + r");
  app.add_option("--restarts", config.restarts, "optimizer restarts");
  app.add_option("--q-card", config.q_card, "auxiliary alphabet size");
  app.add_option("--t-card", config.t_card, "bottleneck alphabet size");
  app.add_option("--yprime-card", config.yprime_card, "intrinsic channel output size");
  app.add_option("--beta", config.beta, "bottleneck trade-off");
  app.add_option("--betas", betas, "comma-separated ascending betas");
  app.add_flag("--oracle", config.oracle, "cross-check against brute-force oracles");
  app.add_option("--format", format, "tsv or report")->check(CLI::IsMember({"tsv", "report"}));
  app.add_option("--x", config.x_partition, "X partition (file, or block notation with --space)");
  app.add_option("--y", config.y_partition, "Y partition (file, or block notation with --space)");
  app.add_option("--space", config.space, "sample-space characters for block notation");
  app.add_option("--output", output, "directory to write the corpus to");
  app.add_option("--corpus", corpus, "corpus directory (overrides INFODECOMP_CORPUS)");
  app.add_option("--manifest", inputs, "corpus manifest whose pmf files are checked");

  for (auto name : command_names()) app.add_subcommand(std::string(name));

  try {
    app.parse(argc, argv);
    if (!betas.empty()) config.betas = parse_betas(betas);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: bad --betas value " << e.what() << "\n";
    return kExitValidation;
  }

  config.command = app.get_subcommands().front()->get_name();
  for (auto& in : inputs) config.inputs.emplace_back(in);
  config.format = format == "tsv" ? OutputFormat::tsv : OutputFormat::report;
  if (!output.empty()) config.output = output;
  if (!corpus.empty()) config.corpus = corpus;
  return run(config, std::cout, std::cerr);
}
