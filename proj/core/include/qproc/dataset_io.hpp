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
#include <iosfwd>
#include <string>

#include "qproc/tomography.hpp"

namespace qproc::io {

/// Header of process-tomography scan files.
inline constexpr const char* kProcessCsvHeader =
    "wavelength_nm,input_idx,output_idx,counts,integration_s";

/// Header of noise (state-tomography) scan files.
inline constexpr const char* kNoiseCsvHeader = "wavelength_nm,output_idx,counts,integration_s";

/// Reads a process CSV. Rows are grouped by wavelength (an empty wavelength
/// field means "no wavelength"); each group must form a complete
/// input x output grid with one integration time. Throws ParseError.
ScanDataset read_process_csv(std::istream& in);
ScanDataset read_process_csv(const std::filesystem::path& path);

/// Rows are written sorted by wavelength, then input, then output, with
/// 17 significant digits for real fields.
void write_process_csv(std::ostream& out, const ScanDataset& scan);
void write_process_csv(const std::filesystem::path& path, const ScanDataset& scan);

/// Noise datasets come back with input_labels = {kNoPreparation}.
ScanDataset read_noise_csv(std::istream& in);
ScanDataset read_noise_csv(const std::filesystem::path& path);

void write_noise_csv(std::ostream& out, const ScanDataset& scan);
void write_noise_csv(const std::filesystem::path& path, const ScanDataset& scan);

/// Shortest round-trip-exact text for a double (17 significant digits).
std::string format_real(double value);

}  // namespace qproc::io
