#include "prot/config.hpp"
#include "prot/errors.hpp"
#include "prot/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDivergence = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string svg_path;
  bool has_seed = false;
  std::uint64_t seed = 0;
};

prot::ExperimentConfig load(const CommonOptions& common) {
  prot::ExperimentConfig cfg = prot::load_config_file(common.config_path);
  if (!common.out_path.empty()) cfg.output.csv = common.out_path;
  if (!common.svg_path.empty()) cfg.output.svg = common.svg_path;
  if (common.has_seed) cfg.run.seed = common.seed;
  return cfg;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool config_required) {
  auto* config = cmd->add_option("--config", common.config_path, "experiment config file");
  if (config_required) config->required();
  cmd->add_option("--out", common.out_path, "override the CSV output path");
  cmd->add_option("--svg", common.svg_path, "override the SVG output path");
  cmd->add_option("--seed", common.seed, "override the [run] seed")
      ->each([&common](const std::string&) { common.has_seed = true; });
}

int report_exit(const prot::RunReport& report, bool informative = false) {
  std::cout << report.to_text();
  if (informative) return kExitOk;
  return report.all_passed() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"protsim: proteretic (reversed-hysteresis) relay network simulator"};
  app.require_subcommand(1);

  CommonOptions transfer_opts, dodecanary_opts, sweep_opts, noise_opts, verify_opts;
  std::vector<double> sweep_rates;
  bool noise_strict = false;
  long verify_trials = 1000;
  std::uint64_t verify_seed = 0;
  bool verify_misordered = false;

  auto* transfer = app.add_subcommand("transfer", "periodic transfer orbit and loop orientation");
  add_common(transfer, transfer_opts, true);

  auto* dodecanary =
      app.add_subcommand("dodecanary", "quantizer on a smooth random input, xcorr lead");
  add_common(dodecanary, dodecanary_opts, true);

  auto* sweep = app.add_subcommand("sweep", "transition leads across a set of ramp rates");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--rates", sweep_rates, "override the [signal] rates list")
      ->delimiter(',');

  auto* noise = app.add_subcommand("noise", "clean vs noisy pulse train (informative checks)");
  add_common(noise, noise_opts, true);
  noise->add_flag("--strict", noise_strict, "exit nonzero when a check fails");

  auto* verify =
      app.add_subcommand("verify", "equivalence campaign: cell vs reference vs network");
  add_common(verify, verify_opts, false);
  verify->add_option("--trials", verify_trials, "number of seeded trials");
  verify->add_flag("--misordered", verify_misordered,
                   "debug: evaluate B before A to demonstrate divergence detection");

  CLI11_PARSE(app, argc, argv);

  try {
    if (transfer->parsed()) {
      return report_exit(prot::run_transfer(load(transfer_opts)).report);
    }
    if (dodecanary->parsed()) {
      return report_exit(prot::run_dodecanary(load(dodecanary_opts)).report);
    }
    if (sweep->parsed()) {
      prot::ExperimentConfig cfg = load(sweep_opts);
      const std::vector<double>& rates =
          sweep_rates.empty() ? cfg.signal.rates : sweep_rates;
      return report_exit(prot::run_rate_sweep(cfg, rates).report);
    }
    if (noise->parsed()) {
      return report_exit(prot::run_noise_pulses(load(noise_opts)).report, !noise_strict);
    }
    if (verify->parsed()) {
      prot::VerifyOptions options;
      options.trials = verify_trials;
      options.seed = verify_opts.has_seed ? verify_opts.seed : 0;
      options.step_b_first = verify_misordered;
      if (!verify_opts.config_path.empty()) {
        const prot::ExperimentConfig cfg = prot::load_config_file(verify_opts.config_path);
        options.a = 0.5 - cfg.device.band / 2.0;
        options.b = 0.5 + cfg.device.band / 2.0;
      }
      const prot::VerifyOutcome outcome = prot::run_verify(options);
      std::cout << outcome.report.to_text();
      return outcome.divergent_trials == 0 ? kExitOk : kExitDivergence;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
