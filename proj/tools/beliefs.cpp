// Batch front end. Every subcommand is a thin mapping from flags onto a
// RunConfig, so flag runs and config-file runs share one code path.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "beliefs/error.hpp"
#include "beliefs/experiment.hpp"

namespace fs = std::filesystem;
using beliefs::RunConfig;
using beliefs::RunMode;

namespace {

// Binds --flag to params[key]; only flags given on the command line land in
// the config, so library defaults stay in one place.
void add_param(CLI::App* app, std::map<std::string, std::string>& values, const std::string& flag,
          const std::string& key, const std::string& help, bool required = false) {
  auto* opt = app->add_option_function<std::string>(
      flag, [&values, key](const std::string& v) { values[key] = v; }, help);
  if (required) opt->required();
}

void add_switch(CLI::App* app, std::map<std::string, std::string>& values, const std::string& flag,
                 const std::string& key, const std::string& help) {
  app->add_flag_callback(flag, [&values, key] { values[key] = "true"; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief dynamics on products of stochastic matrices"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "RNG seed");
  app.add_flag("--quiet", quiet, "Suppress the summary on stdout");

  std::map<std::string, std::string> values;
  std::optional<RunMode> mode;
  std::string config_file;

  auto* analyze = app.add_subcommand("analyze", "Classes, leaves, periods and predicates as JSON lines");
  add_param(analyze, values, "--p", "p", "Matrix CSV");
  add_param(analyze, values, "--family", "family", "Family directory (members + weights.txt)");
  add_param(analyze, values, "--zero-threshold", "zero_threshold", "Entries at or below count as zero");
  analyze->callback([&] { mode = RunMode::Analyze; });

  auto* evolve = app.add_subcommand("evolve", "Q_n = P^n M H^n");
  add_param(evolve, values, "--p", "p", "Network CSV", true);
  add_param(evolve, values, "--m", "m", "Belief CSV", true);
  add_param(evolve, values, "--h", "h", "Concept CSV", true);
  add_param(evolve, values, "--steps", "steps", "Horizon");
  add_param(evolve, values, "--tol", "tol", "Stabilization tolerance (max norm)");
  add_switch(evolve, values, "--limit", "limit", "Also write the closed-form limit");
  add_switch(evolve, values, "--trace", "trace", "Write every snapshot");
  evolve->callback([&] { mode = RunMode::Evolve; });

  auto* sample = app.add_subcommand("sample", "Products with i.i.d. sampled structures");
  add_param(sample, values, "--sp-dir", "sp", "Network family directory", true);
  add_param(sample, values, "--sh-dir", "sh", "Concept family directory", true);
  add_param(sample, values, "--m", "m", "Belief CSV", true);
  add_param(sample, values, "--seeds", "runs", "Number of consecutive seeds");
  add_param(sample, values, "--horizon", "horizon", "Steps per run");
  add_param(sample, values, "--threads", "threads", "Worker threads (0 = all cores)");
  sample->callback([&] { mode = RunMode::Sample; });

  auto* homophily = app.add_subcommand("homophily", "Belief-dependent network and concept links");
  add_param(homophily, values, "--m", "m", "Initial belief CSV", true);
  add_param(homophily, values, "--eps-p", "eps_p", "Network threshold");
  add_param(homophily, values, "--eps-h", "eps_h", "Concept threshold");
  add_param(homophily, values, "--beta", "beta", "Softmax inverse temperature");
  add_param(homophily, values, "--tol", "tol", "Stabilization tolerance");
  add_param(homophily, values, "--max-steps", "max_steps", "Step limit");
  add_param(homophily, values, "--structure", "structure", "both | network_only | concepts_only");
  add_switch(homophily, values, "--trace-out", "trace", "Write per-step P, H, Q under trace/");
  add_switch(homophily, values, "--plot", "plot", "Write ternary SVG frames (three concepts)");
  homophily->callback([&] { mode = RunMode::Homophily; });

  auto* clusters = app.add_subcommand("clusters", "Epsilon-KL clusters of rows or columns");
  add_param(clusters, values, "--m", "m", "Belief CSV", true);
  add_param(clusters, values, "--epsilon", "epsilon", "KL threshold");
  add_param(clusters, values, "--axis", "axis", "rows | cols");
  add_param(clusters, values, "--tol", "tol", "Hull distance accuracy");
  clusters->callback([&] { mode = RunMode::Clusters; });

  auto* certify = app.add_subcommand("certify", "Convergence-rate certificate");
  add_param(certify, values, "--p", "p", "Network CSV (homogeneous)");
  add_param(certify, values, "--h", "h", "Concept CSV (homogeneous)");
  add_param(certify, values, "--m", "m", "Probe belief CSV (homogeneous)");
  add_param(certify, values, "--fit-horizon", "fit_horizon", "Steps used to fit the constant");
  add_param(certify, values, "--family", "family", "Family directory (inhomogeneous)");
  add_param(certify, values, "--nu", "nu", "Block length or auto");
  certify->callback([&] { mode = RunMode::Certify; });

  auto* replay = app.add_subcommand("run", "Run a config file or replay a manifest");
  replay->add_option("config", config_file, "Config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_file.empty()) {
      cfg = beliefs::read_config(config_file);
    } else {
      cfg.mode = *mode;
      cfg.base_dir = fs::current_path();
      cfg.params = values;
    }
    if (out_dir) cfg.out = fs::absolute(*out_dir);
    if (seed) cfg.seed = *seed;
    const beliefs::RunResult result = beliefs::run(cfg);
    if (!quiet) std::cout << result.report;
    return 0;
  } catch (const beliefs::Error& e) {
    std::cerr << "beliefs: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "beliefs: " << e.what() << "\n";
    return 1;
  }
}
