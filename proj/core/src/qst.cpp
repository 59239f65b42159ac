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

#include "qproc/qst.hpp"

#include <cmath>
#include <limits>

#include "qproc/errors.hpp"

namespace qproc {
namespace {

void require_single_input(const TomographyDataset& data) {
  data.validate();
  if (data.num_inputs() != 1) {
    throw InvalidCounts("state tomography data must have exactly one (unprepared) input row");
  }
}

ComplexMatrix projector_rows(const TomographyDataset& data, const StateSet& basis) {
  const StateSet outputs = basis.select(data.output_labels);
  ComplexMatrix rows(outputs.size(), outputs.dim());
  for (int j = 0; j < outputs.size(); ++j) rows.row(j) = outputs[j].amplitudes().adjoint();
  return rows;
}

double poisson_kernel(const RealVector& counts, const RealVector& mean) {
  double ll = 0.0;
  for (Eigen::Index j = 0; j < counts.size(); ++j) {
    if (counts(j) > 0.0) {
      if (!(mean(j) > 0.0)) return -std::numeric_limits<double>::infinity();
      ll += counts(j) * std::log(mean(j));
    }
    ll -= mean(j);
  }
  return ll;
}

}  // namespace

DensityMatrix state_from_params(const ComplexMatrix& g) {
  if (!g.allFinite()) throw NearSingular("state_from_params: non-finite entries");
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  if (!(tr >= 1e-28)) throw NearSingular("state_from_params: Tr(g g^dag) below 1e-28");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

double qst_likelihood(const TomographyDataset& data, const DensityMatrix& rho,
                      const FluxParam& flux, const StateSet& basis) {
  require_single_input(data);
  const ComplexMatrix rows = projector_rows(data, basis);
  if (rows.cols() != rho.dim()) throw DimensionMismatch("qst_likelihood: dimension mismatch");
  const RealVector p = (rows * rho.matrix() * rows.adjoint()).diagonal().real();
  RealVector counts(data.num_outputs());
  for (int j = 0; j < data.num_outputs(); ++j) counts(j) = static_cast<double>(data.counts(0, j));
  const double ll = poisson_kernel(counts, p * (flux.flux() * data.integration_s));
  if (std::isinf(ll)) throw InvalidCounts("qst_likelihood: counts where the model predicts none");
  return ll;
}

StateTarget::StateTarget(const TomographyDataset& data, double log_flux_scale,
                         const StateSet& basis)
    : dim_(basis.dim()),
      tau_(data.integration_s),
      reference_flux_(qproc::reference_flux(data)),
      log_flux_scale_(log_flux_scale),
      projectors_(),
      g_(basis.dim(), basis.dim()) {
  require_single_input(data);
  projectors_ = projector_rows(data, basis);
  counts_.resize(data.num_outputs());
  for (int j = 0; j < data.num_outputs(); ++j) counts_(j) = static_cast<double>(data.counts(0, j));
}

double StateTarget::log_likelihood(std::span<const double> x) {
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * dim_ + c;
      g_(r, c) = Complex(x[2 * i], x[2 * i + 1]);
    }
  }
  const double tr = g_.squaredNorm();
  if (!(tr >= 1e-28)) return -std::numeric_limits<double>::infinity();
  // <psi|g g^dag|psi> = ||g^dag psi||^2 = ||row_j g||^2
  const RealVector p = (projectors_ * g_).rowwise().squaredNorm() / tr;
  const double flux = reference_flux_ * std::exp(log_flux_scale_ * x.back());
  return poisson_kernel(counts_, p * (flux * tau_));
}

DensityMatrix StateTarget::state(std::span<const double> x) const {
  ComplexMatrix g(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * dim_ + c;
      g(r, c) = Complex(x[2 * i], x[2 * i + 1]);
    }
  }
  return state_from_params(g);
}

QstResult run_qst(const TomographyDataset& data, const ChainConfig& config,
                  double log_flux_scale, const StateSet& basis) {
  StateTarget target(data, log_flux_scale, basis);
  QstResult result;
  result.chain = run_pcn(target, config);
  std::vector<double> purities;
  const int d = target.dim();
  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  for (Eigen::Index s = 0; s < result.chain.samples.rows(); ++s) {
    const RealVector row = result.chain.samples.row(s).transpose();
    DensityMatrix rho =
        target.state(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())));
    purities.push_back(purity(rho));
    mean += rho.matrix();
    result.states.push_back(std::move(rho));
  }
  mean /= static_cast<double>(result.states.size());
  mean = 0.5 * (mean + mean.adjoint()).eval();
  mean /= mean.trace().real();
  result.mean_state = DensityMatrix(std::move(mean));
  result.purity = posterior_summary(purities);
  return result;
}

}  // namespace qproc
