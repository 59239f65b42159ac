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
#include <optional>
#include <vector>

#include "qproc/quantum.hpp"

namespace qproc {

/// Input label used by state-tomography datasets, which have no prepared
/// input state.
inline constexpr int kNoPreparation = -1;

/// Non-empty ordered list of pure states of a common dimension.
class StateSet {
 public:
  explicit StateSet(std::vector<PureState> states);

  int dim() const { return states_.front().dim(); }
  int size() const { return static_cast<int>(states_.size()); }
  const PureState& operator[](int i) const { return states_.at(static_cast<std::size_t>(i)); }
  const std::vector<PureState>& states() const { return states_; }

  /// Subset in the order given by `indices`.
  StateSet select(const std::vector<int>& indices) const;

 private:
  std::vector<PureState> states_;
};

/// Indices into default_state_set().
enum DefaultState : int { kH = 0, kV = 1, kPlus = 2, kMinus = 3, kPlusI = 4, kMinusI = 5 };

/// H, V, +, -, +i, -i with |+-> = (|0> +- |1>)/sqrt2 and
/// |+-i> = (|0> +- i|1>)/sqrt2.
const StateSet& default_state_set();

/// LJ x D^2 matrix M_{(lj)(mn)} = conj(psi_j[m]) phi_l[n]. Rows are ordered with
/// l outer and j inner; columns with m outer and n inner, so column m*D + n
/// pairs with the row-major entry A(m, n).
class MappingMatrix {
 public:
  MappingMatrix(const StateSet& inputs, const StateSet& outputs);

  int num_inputs() const { return num_inputs_; }
  int num_outputs() const { return num_outputs_; }
  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  int num_inputs_;
  int num_outputs_;
  int dim_;
  ComplexMatrix m_;
};

/// Throws DimensionMismatch if the two sets differ in dimension.
MappingMatrix mapping_matrix(const StateSet& inputs, const StateSet& outputs);

/// p_lj = sum_k |V_{(lj) k}|^2 with V = M (vec A_1 ... vec A_K). Returns L x J.
RealMatrix outcome_probabilities(const MappingMatrix& m, const KrausSet& channel);

/// Log-normal flux: Phi(z) = reference_flux * exp(log_scale * z).
struct FluxParam {
  double z = 0.0;
  double reference_flux = 1.0;
  double log_scale = 0.1;

  double flux() const;
};

/// N_lj = Phi(z) tau p_lj
RealMatrix expected_counts(const RealMatrix& probabilities, const FluxParam& flux, double tau);

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Photon counts n_lj for prepared inputs l and projectors j. Labels index
/// into a StateSet (default_state_set() unless stated otherwise).
struct TomographyDataset {
  CountMatrix counts;  // L x J
  double integration_s = 1.0;
  std::vector<int> input_labels;
  std::vector<int> output_labels;
  std::optional<double> wavelength_nm;

  int num_inputs() const { return static_cast<int>(counts.rows()); }
  int num_outputs() const { return static_cast<int>(counts.cols()); }
  std::int64_t total_counts() const;
  bool empty() const { return counts.size() == 0; }

  /// Throws InvalidCounts for negative counts, non-positive integration time
  /// or label/count shape disagreement.
  void validate() const;
};

/// Wavelength-ordered list of datasets.
struct ScanDataset {
  std::vector<TomographyDataset> items;

  /// Sorts by wavelength and checks they are strictly increasing. A single
  /// dataset without a wavelength is allowed.
  void canonicalize();
};

/// Data-implied reference flux: total counts / (tau * L * J * 1/2), the
/// mean probability of a projector in a complementary-pair output set being
/// 1/2. Returns 1 when the dataset has no counts.
double reference_flux(const TomographyDataset& data);

/// Precomputed mapping matrix and counts for repeated likelihood evaluation.
class ProcessLikelihood {
 public:
  ProcessLikelihood(const TomographyDataset& data, const StateSet& basis = default_state_set(),
                    double log_flux_scale = 0.1);

  const MappingMatrix& mapping() const { return mapping_; }
  double reference_flux() const { return reference_flux_; }
  double log_flux_scale() const { return log_flux_scale_; }
  double integration_s() const { return tau_; }
  /// Counts flattened in mapping-row order (l outer, j inner).
  const RealVector& counts() const { return counts_; }

  FluxParam flux_at(double z) const { return {z, reference_flux_, log_flux_scale_}; }

  /// sum_lj (-N_lj + n_lj ln N_lj). Throws InvalidCounts if n_lj > 0 where
  /// N_lj == 0.
  double operator()(const KrausSet& channel, const FluxParam& flux) const;

  /// Same sum from flattened probabilities; -inf instead of throwing.
  double from_probabilities(const RealVector& probabilities, double flux) const noexcept;

 private:
  MappingMatrix mapping_;
  RealVector counts_;
  double tau_;
  double reference_flux_;
  double log_flux_scale_;
};

/// Poisson log-likelihood with factorials dropped.
double log_likelihood(const TomographyDataset& data, const KrausSet& channel,
                      const FluxParam& flux, const StateSet& basis = default_state_set());

enum class SimulationMode { kNoiseless, kPoisson };

/// Counts for every (input, output) pair of `basis` (default all six). Noiseless
/// rounds the mean to the nearest integer; Poisson draws from a generator
/// seeded with `seed`.
TomographyDataset simulate_counts(const KrausSet& channel, double flux_mean, double tau,
                                  SimulationMode mode, std::uint64_t seed,
                                  const StateSet& basis = default_state_set());

/// Same, restricted to the given input and output indices of `basis`.
TomographyDataset simulate_counts(const KrausSet& channel, double flux_mean, double tau,
                                  SimulationMode mode, std::uint64_t seed,
                                  const std::vector<int>& inputs, const std::vector<int>& outputs,
                                  const StateSet& basis = default_state_set());

/// Counts for measuring `rho` against every output of `basis`, as a single
/// unprepared input row (noise-only data).
TomographyDataset simulate_state_counts(const DensityMatrix& rho, double flux_mean, double tau,
                                        SimulationMode mode, std::uint64_t seed,
                                        const StateSet& basis = default_state_set());

}  // namespace qproc
