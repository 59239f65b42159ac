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

#include <span>
#include <vector>

#include "qproc/pcn.hpp"
#include "qproc/quantum.hpp"
#include "qproc/tomography.hpp"

namespace qproc {

/// rho = g g^dag / Tr(g g^dag). Throws NearSingular if Tr(g g^dag) < 1e-28.
DensityMatrix state_from_params(const ComplexMatrix& g);

/// Poisson log-likelihood of projector counts with p_j = <psi_j|rho|psi_j>.
/// `data` must have a single input row. Throws InvalidCounts.
double qst_likelihood(const TomographyDataset& data, const DensityMatrix& rho,
                      const FluxParam& flux, const StateSet& basis = default_state_set());

/// Likelihood over the real coordinates [Re g_00, Im g_00, Re g_01, ..., z]
/// of a square g (row-major). One instance per chain.
class StateTarget {
 public:
  explicit StateTarget(const TomographyDataset& data, double log_flux_scale = 0.1,
                       const StateSet& basis = default_state_set());

  int dim() const { return dim_; }
  std::size_t dimension() const { return 2u * static_cast<std::size_t>(dim_) * dim_ + 1; }
  double reference_flux() const { return reference_flux_; }

  double log_likelihood(std::span<const double> x);
  DensityMatrix state(std::span<const double> x) const;

 private:
  int dim_;
  double tau_;
  double reference_flux_;
  double log_flux_scale_;
  ComplexMatrix projectors_;  // J x D, row j = conj(psi_j)
  RealVector counts_;
  ComplexMatrix g_;
};

struct QstResult {
  Summary purity;
  DensityMatrix mean_state = DensityMatrix::maximally_mixed(2);
  std::vector<DensityMatrix> states;
  ChainResult chain;
};

/// Bayesian state tomography with a complex-normal prior on g.
QstResult run_qst(const TomographyDataset& data, const ChainConfig& config,
                  double log_flux_scale = 0.1, const StateSet& basis = default_state_set());

}  // namespace qproc
