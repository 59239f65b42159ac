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

#include "manifest.hpp"

#include "qproc/channel_models.hpp"
#include "qproc/cli/commands.hpp"
#include "qproc/errors.hpp"
#include "qproc/serialization.hpp"

#ifndef QPROC_VERSION
#define QPROC_VERSION "unknown"
#endif

namespace qproc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string pinned_path(const fs::path& p) {
  return p.empty() ? std::string() : fs::absolute(p).lexically_normal().string();
}

// Unitary specs carry a file path; pin it so replays work from any directory.
std::string absolute_spec(const std::string& text) {
  const std::string prefix = "unitary:file=";
  if (!text.starts_with(prefix)) return text;
  return prefix + pinned_path(text.substr(prefix.size()));
}

std::vector<std::string> absolute_specs(const std::vector<std::string>& specs) {
  std::vector<std::string> out;
  for (const auto& s : specs) out.push_back(absolute_spec(s));
  return out;
}

json chain_json(const ChainFlags& c) {
  return json{{"beta", c.beta},
              {"samples", c.samples},
              {"thin", c.thin},
              {"burn_in", c.burn_in ? json(*c.burn_in) : json(nullptr)},
              {"adapt_beta", c.adapt_beta}};
}

ChainFlags chain_from(const json& j) {
  ChainFlags c;
  c.beta = j.at("beta").get<double>();
  c.samples = j.at("samples").get<int>();
  c.thin = j.at("thin").get<std::int64_t>();
  if (!j.at("burn_in").is_null()) c.burn_in = j.at("burn_in").get<std::int64_t>();
  c.adapt_beta = j.at("adapt_beta").get<bool>();
  return c;
}

SimulateOptions simulate_from(const json& j) {
  SimulateOptions o;
  o.models = j.at("models").get<std::vector<std::string>>();
  o.counts = j.at("counts").get<double>();
  o.integration_s = j.at("integration_s").get<double>();
  o.mode = j.at("mode").get<std::string>();
  o.wavelengths_nm = j.at("wavelengths_nm").get<std::vector<double>>();
  o.noise = j.at("noise").get<bool>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.out = j.at("out").get<std::string>();
  return o;
}

FitProcessOptions fit_process_from(const json& j) {
  FitProcessOptions o;
  o.dataset = j.at("dataset").get<std::string>();
  o.chain = chain_from(j.at("chain"));
  o.choi_rank = j.at("choi_rank").get<int>();
  if (!j.at("truth").is_null()) o.truth = j.at("truth").get<std::string>();
  o.capacity = j.at("capacity").get<bool>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.workers = j.at("workers").get<int>();
  o.out = j.at("out").get<std::string>();
  return o;
}

FitStateOptions fit_state_from(const json& j) {
  FitStateOptions o;
  o.dataset = j.at("dataset").get<std::string>();
  o.chain = chain_from(j.at("chain"));
  o.seed = j.at("seed").get<std::uint64_t>();
  o.workers = j.at("workers").get<int>();
  o.out = j.at("out").get<std::string>();
  return o;
}

CompareModelsOptions compare_models_from(const json& j) {
  CompareModelsOptions o;
  o.posteriors = j.at("posteriors").get<std::string>();
  o.signal = j.at("signal").get<std::string>();
  o.noise = j.at("noise").get<std::string>();
  o.models = j.at("models").get<std::vector<std::string>>();
  o.window = j.at("window").get<std::string>();
  o.starts = j.at("starts").get<int>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.out = j.at("out").get<std::string>();
  return o;
}

UnitarityCurveOptions unitarity_curve_from(const json& j) {
  UnitarityCurveOptions o;
  o.models = j.at("models").get<std::vector<std::string>>();
  o.points = j.at("points").get<int>();
  o.grid = j.at("grid").get<std::vector<double>>();
  o.out = j.at("out").get<std::string>();
  return o;
}

ConvergenceProbeOptions convergence_probe_from(const json& j) {
  ConvergenceProbeOptions o;
  o.dataset = j.at("dataset").get<std::string>();
  o.chain = chain_from(j.at("chain"));
  o.metric = j.at("metric").get<std::string>();
  o.min_thin = j.at("min_thin").get<std::int64_t>();
  o.max_thin = j.at("max_thin").get<std::int64_t>();
  o.tolerance = j.at("tolerance").get<double>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.workers = j.at("workers").get<int>();
  o.out = j.at("out").get<std::string>();
  return o;
}

}  // namespace

json to_json(const SimulateOptions& o) {
  return json{{"models", absolute_specs(o.models)},
              {"counts", o.counts},
              {"integration_s", o.integration_s},
              {"mode", o.mode},
              {"wavelengths_nm", o.wavelengths_nm},
              {"noise", o.noise},
              {"seed", o.seed},
              {"out", pinned_path(o.out)}};
}

json to_json(const FitProcessOptions& o) {
  return json{{"dataset", pinned_path(o.dataset)},
              {"chain", chain_json(o.chain)},
              {"choi_rank", o.choi_rank},
              {"truth", o.truth ? json(absolute_spec(*o.truth)) : json(nullptr)},
              {"capacity", o.capacity},
              {"seed", o.seed},
              {"workers", o.workers},
              {"out", pinned_path(o.out)}};
}

json to_json(const FitStateOptions& o) {
  return json{{"dataset", pinned_path(o.dataset)},
              {"chain", chain_json(o.chain)},
              {"seed", o.seed},
              {"workers", o.workers},
              {"out", pinned_path(o.out)}};
}

json to_json(const CompareModelsOptions& o) {
  return json{{"posteriors", pinned_path(o.posteriors)},
              {"signal", pinned_path(o.signal)},
              {"noise", pinned_path(o.noise)},
              {"models", o.models},
              {"window", o.window},
              {"starts", o.starts},
              {"seed", o.seed},
              {"out", pinned_path(o.out)}};
}

json to_json(const UnitarityCurveOptions& o) {
  return json{{"models", o.models}, {"points", o.points}, {"grid", o.grid}, {"out", pinned_path(o.out)}};
}

json to_json(const ConvergenceProbeOptions& o) {
  return json{{"dataset", pinned_path(o.dataset)},
              {"chain", chain_json(o.chain)},
              {"metric", o.metric},
              {"min_thin", o.min_thin},
              {"max_thin", o.max_thin},
              {"tolerance", o.tolerance},
              {"seed", o.seed},
              {"workers", o.workers},
              {"out", pinned_path(o.out)}};
}

void write_manifest(const fs::path& out, const std::string& command, const json& options,
                    const std::vector<std::string>& outputs) {
  json inputs = json::object();
  for (const char* key : {"dataset", "posteriors", "signal", "noise"}) {
    if (options.contains(key) && options.at(key).is_string()) inputs[key] = options.at(key);
  }
  json models = json::array();
  if (options.contains("models")) models = options.at("models");
  if (options.contains("truth") && !options.at("truth").is_null()) models.push_back(options.at("truth"));
  json manifest{{"tool", "qproc"},
                {"version", QPROC_VERSION},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"chain", options.value("chain", json(nullptr))},
                {"models", std::move(models)},
                {"seed", options.value("seed", json(nullptr))},
                {"output_dir", options.at("out")},
                {"outputs", outputs},
                {"options", options}};
  write_json_file(out / "manifest.json", manifest);
}

int cmd_replay(const fs::path& manifest_path, std::optional<fs::path> out,
               std::optional<int> workers) {
  const json manifest = read_json_file(manifest_path);
  std::string command;
  json options;
  try {
    command = manifest.at("command").get<std::string>();
    options = manifest.at("options");
  } catch (const json::exception& e) {
    throw ParseError(manifest_path.string() + ": not a manifest (" + e.what() + ")");
  }
  if (out) options["out"] = out->string();
  if (workers && options.contains("workers")) options["workers"] = *workers;
  try {
    if (command == "simulate") return cmd_simulate(simulate_from(options));
    if (command == "fit-process") return cmd_fit_process(fit_process_from(options));
    if (command == "fit-state") return cmd_fit_state(fit_state_from(options));
    if (command == "compare-models") return cmd_compare_models(compare_models_from(options));
    if (command == "unitarity-curve") return cmd_unitarity_curve(unitarity_curve_from(options));
    if (command == "convergence-probe") return cmd_convergence_probe(convergence_probe_from(options));
  } catch (const json::exception& e) {
    throw ParseError(manifest_path.string() + ": malformed options (" + e.what() + ")");
  }
  throw BadSpec("manifest command '" + command + "' is not replayable");
}

}  // namespace qproc::cli
