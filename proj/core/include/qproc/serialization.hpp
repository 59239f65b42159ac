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

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qproc/pcn.hpp"
#include "qproc/process_fit.hpp"
#include "qproc/quantum.hpp"
#include "qproc/tomography.hpp"

namespace qproc {

// Matrices are row-major nested arrays of [re, im] pairs. Doubles are written
// in shortest round-trip form.

nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Accepts {"dim": D, "entries": [...]} or a bare nested array. Throws ParseError.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// {"dim": D, "K": K, "operators": [matrix, ...]}
nlohmann::json kraus_to_json(const KrausSet& channel);
KrausSet kraus_from_json(const nlohmann::json& j);

nlohmann::json choi_to_json(const ChoiMatrix& choi);

/// List of amplitude pairs per state: {"states": [[[re, im], [re, im]], ...]}.
nlohmann::json state_set_to_json(const StateSet& set);
StateSet state_set_from_json(const nlohmann::json& j);

nlohmann::json chain_config_to_json(const ChainConfig& config);
ChainConfig chain_config_from_json(const nlohmann::json& j);

/// {config, acceptance_rate, samples: [{y: [...], z}], ...} plus the fields
/// needed to rebuild channels (dim, K, reference flux, wavelength).
nlohmann::json posterior_to_json(const PosteriorSamples& posterior,
                                 std::optional<double> wavelength_nm);

struct LoadedPosterior {
  std::optional<double> wavelength_nm;
  PosteriorSamples posterior;
};
LoadedPosterior posterior_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `j.dump(2)` plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// Reads a single matrix file (see matrix_from_json).
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

}  // namespace qproc
