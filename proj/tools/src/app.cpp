// Copyright 2026 The qproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "qproc/cli/commands.hpp"
#include "qproc/errors.hpp"

#ifndef QPROC_VERSION
#define QPROC_VERSION "unknown"
#endif

namespace qproc::cli {
namespace {

void configure_logging() {
  // run() may be called more than once per process (tests)
  auto logger = spdlog::get("qproc");
  if (!logger) {
    logger = spdlog::stderr_color_mt("qproc");
    logger->set_pattern("[%l] %v");
  }
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  const char* env = std::getenv("QPROC_LOG");
  if (env == nullptr || *env == '\0') return;
  const std::string name(env);
  const auto level = spdlog::level::from_str(name);
  if (level == spdlog::level::off && name != "off") {
    spdlog::warn("QPROC_LOG='{}' is not a level (trace, debug, info, warn, error, critical, off)",
                 name);
    return;
  }
  spdlog::set_level(level);
}

void add_chain_flags(CLI::App* app, ChainFlags& chain, std::uint64_t& seed) {
  app->add_option("--seed", seed, "Base seed; per-wavelength seeds derive from it");
  app->add_option("--beta", chain.beta, "Initial pCN step size")->check(CLI::Range(1e-9, 1.0));
  app->add_option("--samples,-R", chain.samples, "Retained samples R")->check(CLI::PositiveNumber);
  app->add_option("--thin,-T", chain.thin, "Thinning interval T")->check(CLI::PositiveNumber);
  app->add_option("--burn-in", chain.burn_in, "Burn-in steps (default R*T/10)");
  app->add_flag("!--fixed-beta", chain.adapt_beta, "Disable beta adaptation during burn-in");
}

}  // namespace

int run(int argc, const char* const* argv) {
  configure_logging();

  CLI::App app{"Bayesian quantum process tomography from photon counts"};
  app.set_version_flag("--version", QPROC_VERSION);
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate synthetic tomography counts");
  sim_cmd->add_option("models", sim.models, "Model specs, composed left to right")->required();
  sim_cmd->add_option("--counts", sim.counts, "Counts per integration time at unit probability");
  sim_cmd->add_option("--tau", sim.integration_s, "Integration time in seconds");
  sim_cmd->add_option("--mode", sim.mode, "noiseless or poisson");
  sim_cmd->add_option("--wavelengths", sim.wavelengths_nm, "Wavelengths in nm")->delimiter(',');
  sim_cmd->add_flag("--noise", sim.noise, "Emit noise-only data: the channel applied to I/D");
  sim_cmd->add_option("--seed", sim.seed, "Base seed");
  sim_cmd->add_option("--out,-o", sim.out, "Output directory")->required();

  FitProcessOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-process", "Sample the channel posterior per wavelength");
  fit_cmd->add_option("dataset", fit.dataset, "Process CSV")->required()->check(CLI::ExistingFile);
  add_chain_flags(fit_cmd, fit.chain, fit.seed);
  fit_cmd->add_option("--choi-rank,-K", fit.choi_rank, "Kraus operators (default D^2)");
  fit_cmd->add_option("--truth", fit.truth, "Model spec for a fidelity_to_truth column");
  fit_cmd->add_flag("!--no-capacity", fit.capacity, "Skip per-sample capacity");
  fit_cmd->add_option("--workers,-j", fit.workers, "Concurrent chains")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--out,-o", fit.out, "Output directory")->required();

  FitStateOptions state;
  auto* state_cmd = app.add_subcommand("fit-state", "State tomography of noise-only data");
  state_cmd->add_option("dataset", state.dataset, "Noise CSV")->required()->check(CLI::ExistingFile);
  add_chain_flags(state_cmd, state.chain, state.seed);
  state_cmd->add_option("--workers,-j", state.workers, "Concurrent chains")->check(CLI::PositiveNumber);
  state_cmd->add_option("--out,-o", state.out, "Output directory")->required();

  CompareModelsOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare-models", "Fit channel models up to local unitaries");
  cmp_cmd->add_option("posteriors", cmp.posteriors, "fit-process output directory or posterior file")
      ->required()
      ->check(CLI::ExistingPath);
  cmp_cmd->add_option("--signal", cmp.signal, "Signal-only process CSV")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--noise", cmp.noise, "Noise-only CSV")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--model", cmp.models, "Model families to compare");
  cmp_cmd->add_option("--window", cmp.window, "Wavelength window lo:hi in nm, or all");
  cmp_cmd->add_option("--starts", cmp.starts, "Optimizer starts")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", cmp.seed, "Optimizer seed");
  cmp_cmd->add_option("--out,-o", cmp.out, "Output directory")->required();

  UnitarityCurveOptions curve;
  auto* curve_cmd = app.add_subcommand("unitarity-curve", "Inunitarity versus mixing probability");
  curve_cmd->add_option("--model", curve.models, "Model families");
  curve_cmd->add_option("--points", curve.points, "Uniform grid size on [0, 1]");
  curve_cmd->add_option("--grid", curve.grid, "Explicit p_M values")->delimiter(',');
  curve_cmd->add_option("--out,-o", curve.out, "Output directory")->required();

  ConvergenceProbeOptions probe;
  auto* probe_cmd = app.add_subcommand("convergence-probe", "Choose thinning by successive doubling");
  probe_cmd->add_option("dataset", probe.dataset, "Process CSV")->required()->check(CLI::ExistingFile);
  add_chain_flags(probe_cmd, probe.chain, probe.seed);
  probe_cmd->add_option("--metric", probe.metric, "unitarity or capacity");
  probe_cmd->add_option("--min-thin", probe.min_thin, "First thinning tried");
  probe_cmd->add_option("--max-thin", probe.max_thin, "Thinning ceiling");
  probe_cmd->add_option("--tolerance", probe.tolerance, "Absolute agreement floor");
  probe_cmd->add_option("--workers,-j", probe.workers, "Concurrent probes")->check(CLI::PositiveNumber);
  probe_cmd->add_option("--out,-o", probe.out, "Output directory")->required();

  std::filesystem::path manifest;
  std::optional<std::filesystem::path> replay_out;
  std::optional<int> replay_workers;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a command from its manifest.json");
  replay_cmd->add_option("manifest", manifest, "manifest.json")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--out,-o", replay_out, "Output directory (default: as recorded)");
  replay_cmd->add_option("--workers,-j", replay_workers, "Override the worker count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*sim_cmd) return cmd_simulate(sim);
    if (*fit_cmd) return cmd_fit_process(fit);
    if (*state_cmd) return cmd_fit_state(state);
    if (*cmp_cmd) return cmd_compare_models(cmp);
    if (*curve_cmd) return cmd_unitarity_curve(curve);
    if (*probe_cmd) return cmd_convergence_probe(probe);
    if (*replay_cmd) return cmd_replay(manifest, replay_out, replay_workers);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    spdlog::critical("{}", e.what());
    return 1;
  }
  return kExitBadInput;
}

}  // namespace qproc::cli
