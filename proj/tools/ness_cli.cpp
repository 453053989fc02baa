// Experiment driver: variational steady-state runs, cost landscapes,
// distance scatters, and exact-diagonalization exports.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ness/experiment.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", args.config_path,
                              "experiment configuration file");
  if (needs_config) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory override");
  cmd->add_option("--seed", args.seed, "master seed override");
  cmd->add_option("--threads", args.threads, "worker thread count")
      ->envname("NESS_THREADS");
}

ness::ExperimentConfig load(const CommonArgs& args) {
  ness::ExperimentConfig cfg = ness::parse_config_file(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.seed) cfg.seed = args.seed;
  if (args.threads > 0) cfg.threads = args.threads;
  return cfg;
}

std::uint64_t require_seed(const ness::ExperimentConfig& cfg) {
  if (!cfg.seed)
    throw ness::ConfigError(
        "a seed is required (config [run] seed= or --seed); wall-clock "
        "seeding is not supported");
  return *cfg.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variational steady-state solver"};
  app.require_subcommand(1);

  CommonArgs sweep_args, landscape_args, scatter_args, oracle_args,
      validate_args;
  auto* sweep = app.add_subcommand("sweep", "optimize over a parameter sweep");
  add_common(sweep, sweep_args);
  auto* landscape =
      app.add_subcommand("landscape", "scan the cost in one parameter");
  add_common(landscape, landscape_args);
  auto* scatter =
      app.add_subcommand("scatter", "compare distance measures on random states");
  add_common(scatter, scatter_args);
  auto* oracle =
      app.add_subcommand("oracle-ness", "export the exact steady state");
  add_common(oracle, oracle_args);
  auto* validate =
      app.add_subcommand("validate-config", "parse and check a config file");
  add_common(validate, validate_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) {
      const auto cfg = load(sweep_args);
      const auto res = ness::run_sweep(cfg, require_seed(cfg));
      ness::write_file(cfg.out_dir + "/sweep.csv", res.csv);
      ness::write_file(cfg.out_dir + "/sweep_meta.json", res.metadata_json);
      std::cout << "wrote " << cfg.out_dir << "/sweep.csv (" << res.rows.size()
                << " rows)\n";
    } else if (landscape->parsed()) {
      const auto cfg = load(landscape_args);
      const auto res = ness::run_landscape(cfg, require_seed(cfg));
      ness::write_file(cfg.out_dir + "/landscape.csv", res.csv);
      std::cout << "wrote " << cfg.out_dir << "/landscape.csv ("
                << res.rows.size() << " rows)\n";
    } else if (scatter->parsed()) {
      const auto cfg = load(scatter_args);
      const auto res = ness::run_scatter(cfg, require_seed(cfg));
      ness::write_file(cfg.out_dir + "/scatter.csv", res.csv);
      std::cout << res.summary_text;
      std::cout << "wrote " << cfg.out_dir << "/scatter.csv ("
                << res.rows.size() << " rows)\n";
    } else if (oracle->parsed()) {
      const auto cfg = load(oracle_args);
      const auto res = ness::run_oracle_ness(cfg);
      ness::write_file(cfg.out_dir + "/ness_pauli.txt", res.pauli_text);
      ness::write_file(cfg.out_dir + "/ness_dense.csv", res.csv);
      std::cout << "gap " << ness::format_double(res.ness.gap) << "\n";
      std::cout << "wrote " << cfg.out_dir << "/ness_pauli.txt and "
                << cfg.out_dir << "/ness_dense.csv\n";
    } else if (validate->parsed()) {
      const auto cfg = load(validate_args);
      build_model(cfg).validate();
      build_observables(cfg);
      std::cout << "config ok (hash " << cfg.config_hash << ")\n";
    }
  } catch (const ness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ness::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
