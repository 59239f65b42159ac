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
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qproc/channel_models.hpp"
#include "qproc/quantum.hpp"
#include "qproc/tomography.hpp"

namespace qproc {

/// Tr[T^dag T] / (D^2 - 1) from the Pauli transfer matrix. Qubits only.
double unitarity(const KrausSet& channel);

/// S(W) with W_{mu nu} = Tr[A_mu rho A_nu^dag], in bits.
double entropy_exchange(const DensityMatrix& rho, const KrausSet& channel);

/// S(E(rho)) - S_e(rho, E), in bits.
double coherent_information(const DensityMatrix& rho, const KrausSet& channel);

struct CapacityOptions {
  int random_starts = 1;          // in addition to I/2 and the six basis states
  std::uint64_t seed = 7;
  int max_iterations = 500;
  double objective_tolerance = 1e-9;
  double gradient_tolerance = 1e-6;
};

struct CapacityResult {
  double capacity = 0.0;          // qubits per channel use, clipped at 0
  double unclipped = 0.0;         // best coherent information found
  bool clipped = false;
  DensityMatrix argmax_state = DensityMatrix::maximally_mixed(2);
  int optimizer_iterations = 0;   // summed over starts
  bool converged = false;         // the winning start met both tolerances
};

/// max over rho of coherent_information(rho, channel), by projected gradient
/// ascent over the Bloch ball from several starts. Qubits only.
CapacityResult channel_capacity(const KrausSet& channel, const CapacityOptions& options = {});

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2. Throws DimensionMismatch.
double process_fidelity(const ChoiMatrix& a, const ChoiMatrix& b);

/// F(scan[i], scan[0]) for each i; the first entry is 1.
std::vector<double> relative_process_fidelity(std::span<const ChoiMatrix> scan);

/// Rotation Rz(a) Ry(b) Rz(c).
ComplexMatrix zyz_unitary(double alpha, double beta, double gamma);

struct LocalUnitaryOptions {
  int starts = 16;
  std::uint64_t seed = 11;
  int max_evaluations = 4000;     // per start
  double tolerance = 1e-12;       // simplex spread in fidelity
};

struct ModelFitResult {
  std::string model;
  double p_m = 0.0;
  double fidelity = 0.0;
  double unrotated_fidelity = 0.0;
  ComplexMatrix pre_rotation;     // U, applied before the model
  ComplexMatrix post_rotation;    // V, applied after the model
};

/// Maximizes F(measured, Choi(V o model o U)) over U, V in SU(2).
ModelFitResult max_fidelity_over_local_unitaries(const ChoiMatrix& measured,
                                                 const KrausSet& model,
                                                 const LocalUnitaryOptions& options = {});

/// Choi of unitary(V) o model o unitary(U).
ChoiMatrix rotated_model_choi(const KrausSet& model, const ComplexMatrix& pre,
                              const ComplexMatrix& post);

struct MixingEstimate {
  double p_m = 0.0;
  double std = 0.0;
};

/// p_M = R_noise / (R_noise + R_signal) from H/V-projector count rates
/// (output labels kH and kV), with Poisson error propagation. Rates are per
/// input row. Throws EmptyData when there are no H/V columns or no counts.
MixingEstimate mixing_probability_from_counts(const TomographyDataset& signal_only,
                                              const TomographyDataset& noise_only);

struct InunitarityPoint {
  double p_m = 0.0;
  double inunitarity = 0.0;
};

/// 1 - unitarity(model(p)) over the grid.
std::vector<InunitarityPoint> inunitarity_curve(ModelFamily family, std::span<const double> grid);

/// Same, for an arbitrary channel family.
std::vector<InunitarityPoint> inunitarity_curve(
    const std::function<KrausSet(double)>& family, std::span<const double> grid);

}  // namespace qproc
