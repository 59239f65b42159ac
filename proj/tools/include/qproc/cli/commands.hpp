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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qproc/pcn.hpp"

namespace qproc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNotConverged = 3;

/// Closed wavelength interval; `all` accepts every dataset, including ones
/// without a wavelength.
struct Window {
  double lo_nm = 1555.0;
  double hi_nm = 1560.0;
  bool all = false;

  bool contains(std::optional<double> wavelength_nm) const;
};

/// "1555:1560" or "all". Throws BadSpec.
Window parse_window(const std::string& text);

/// Seed for job `index` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct ChainFlags {
  double beta = 0.1;
  int samples = 1024;
  std::int64_t thin = 2048;
  std::optional<std::int64_t> burn_in;
  bool adapt_beta = true;

  ChainConfig to_config(std::uint64_t seed) const;
};

struct SimulateOptions {
  std::vector<std::string> models;      // composed left to right
  double counts = 1e5;                  // flux: counts per tau at unit probability
  double integration_s = 1.0;
  std::string mode = "noiseless";       // noiseless | poisson
  std::vector<double> wavelengths_nm;   // empty: a single unlabelled dataset
  bool noise = false;                   // measure E(I/D) as noise-only data
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

struct FitProcessOptions {
  std::filesystem::path dataset;
  ChainFlags chain;
  int choi_rank = 0;
  std::optional<std::string> truth;     // model spec for fidelity_to_truth
  bool capacity = true;
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out;
};

struct FitStateOptions {
  std::filesystem::path dataset;
  ChainFlags chain{.thin = 1024};
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out;
};

struct CompareModelsOptions {
  std::filesystem::path posteriors;     // directory of posterior_*.json
  std::filesystem::path signal;         // process CSV, noise source off
  std::filesystem::path noise;          // noise CSV, signal off
  std::vector<std::string> models{"depolarizing", "dephasing"};
  std::string window = "1555:1560";
  int starts = 16;
  std::uint64_t seed = 11;
  std::filesystem::path out;
};

struct UnitarityCurveOptions {
  std::vector<std::string> models{"depolarizing"};
  int points = 101;
  std::vector<double> grid;             // overrides points when non-empty
  std::filesystem::path out;
};

struct ConvergenceProbeOptions {
  std::filesystem::path dataset;
  ChainFlags chain;
  std::string metric = "unitarity";     // unitarity | capacity
  std::int64_t min_thin = 4;
  std::int64_t max_thin = std::int64_t{1} << 18;
  double tolerance = 1e-3;
  std::uint64_t seed = 1;
  int workers = 1;
  std::filesystem::path out;
};

// Each command writes its outputs plus manifest.json into `out` and returns
// an exit code. Input errors surface as qproc::Error exceptions.
int cmd_simulate(const SimulateOptions& options);
int cmd_fit_process(const FitProcessOptions& options);
int cmd_fit_state(const FitStateOptions& options);
int cmd_compare_models(const CompareModelsOptions& options);
int cmd_unitarity_curve(const UnitarityCurveOptions& options);
int cmd_convergence_probe(const ConvergenceProbeOptions& options);

/// Re-runs the command recorded in a manifest. `out` and `workers` override
/// the recorded values when set.
int cmd_replay(const std::filesystem::path& manifest, std::optional<std::filesystem::path> out,
               std::optional<int> workers);

nlohmann::json to_json(const SimulateOptions& o);
nlohmann::json to_json(const FitProcessOptions& o);
nlohmann::json to_json(const FitStateOptions& o);
nlohmann::json to_json(const CompareModelsOptions& o);
nlohmann::json to_json(const UnitarityCurveOptions& o);
nlohmann::json to_json(const ConvergenceProbeOptions& o);

/// Parses argv, dispatches, maps exceptions to exit codes.
int run(int argc, const char* const* argv);

}  // namespace qproc::cli
