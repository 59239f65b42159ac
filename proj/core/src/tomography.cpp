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

#include "qproc/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qproc/errors.hpp"

namespace qproc {

// -----------------------------------------------------------------------------
// StateSet

StateSet::StateSet(std::vector<PureState> states) : states_(std::move(states)) {
  if (states_.empty()) throw InvalidState("StateSet: empty state list");
  const int d = states_.front().dim();
  for (const auto& s : states_) {
    if (s.dim() != d) throw DimensionMismatch("StateSet: states of different dimension");
  }
}

StateSet StateSet::select(const std::vector<int>& indices) const {
  std::vector<PureState> out;
  out.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || i >= size()) {
      std::ostringstream msg;
      msg << "StateSet::select: index " << i << " outside [0, " << size() << ")";
      throw InvalidCounts(msg.str());
    }
    out.push_back(states_[static_cast<std::size_t>(i)]);
  }
  return StateSet(std::move(out));
}

const StateSet& default_state_set() {
  static const StateSet set = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    auto vec = [](Complex a, Complex b) {
      ComplexVector v(2);
      v << a, b;
      return PureState(v);
    };
    return StateSet({vec(1.0, 0.0), vec(0.0, 1.0), vec(h, h), vec(h, -h), vec(h, i * h),
                     vec(h, -i * h)});
  }();
  return set;
}

// -----------------------------------------------------------------------------
// MappingMatrix

MappingMatrix::MappingMatrix(const StateSet& inputs, const StateSet& outputs)
    : num_inputs_(inputs.size()), num_outputs_(outputs.size()), dim_(inputs.dim()) {
  if (inputs.dim() != outputs.dim()) {
    throw DimensionMismatch("mapping_matrix: input and output states differ in dimension");
  }
  const int d = dim_;
  m_.resize(static_cast<Eigen::Index>(num_inputs_) * num_outputs_, d * d);
  for (int l = 0; l < num_inputs_; ++l) {
    const auto& phi = inputs[l].amplitudes();
    for (int j = 0; j < num_outputs_; ++j) {
      const auto& psi = outputs[j].amplitudes();
      const Eigen::Index row = static_cast<Eigen::Index>(l) * num_outputs_ + j;
      for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) m_(row, m * d + n) = std::conj(psi(m)) * phi(n);
      }
    }
  }
}

MappingMatrix mapping_matrix(const StateSet& inputs, const StateSet& outputs) {
  return MappingMatrix(inputs, outputs);
}

RealMatrix outcome_probabilities(const MappingMatrix& m, const KrausSet& channel) {
  const int d = m.dim();
  if (channel.dim() != d) {
    throw DimensionMismatch("outcome_probabilities: channel dimension differs from mapping");
  }
  const int k_count = channel.choi_rank();
  ComplexMatrix stacked(d * d, k_count);
  for (int k = 0; k < k_count; ++k) {
    const auto& a = channel[static_cast<std::size_t>(k)];
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) stacked(r * d + c, k) = a(r, c);
    }
  }
  const ComplexMatrix v = m.matrix() * stacked;
  const RealVector flat = v.rowwise().squaredNorm();
  RealMatrix p(m.num_inputs(), m.num_outputs());
  for (int l = 0; l < m.num_inputs(); ++l) {
    for (int j = 0; j < m.num_outputs(); ++j) {
      p(l, j) = std::clamp(flat(static_cast<Eigen::Index>(l) * m.num_outputs() + j), 0.0, 1.0);
    }
  }
  return p;
}

// -----------------------------------------------------------------------------
// Flux and counts

double FluxParam::flux() const {
  return reference_flux * std::exp(log_scale * z);
}

RealMatrix expected_counts(const RealMatrix& probabilities, const FluxParam& flux, double tau) {
  if (!(tau > 0.0)) throw InvalidCounts("expected_counts: integration time must be positive");
  return probabilities * (flux.flux() * tau);
}

std::int64_t TomographyDataset::total_counts() const {
  return counts.sum();
}

void TomographyDataset::validate() const {
  if (!(integration_s > 0.0) || !std::isfinite(integration_s)) {
    throw InvalidCounts("dataset: integration time must be positive and finite");
  }
  if (static_cast<Eigen::Index>(input_labels.size()) != counts.rows() ||
      static_cast<Eigen::Index>(output_labels.size()) != counts.cols()) {
    throw InvalidCounts("dataset: label lists do not match the count table shape");
  }
  if (counts.size() > 0 && counts.minCoeff() < 0) {
    throw InvalidCounts("dataset: negative counts");
  }
}

void ScanDataset::canonicalize() {
  if (items.size() > 1) {
    for (const auto& d : items) {
      if (!d.wavelength_nm) throw InvalidCounts("scan: every dataset needs a wavelength");
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.wavelength_nm.value_or(0.0) < b.wavelength_nm.value_or(0.0);
  });
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (!(*items[i].wavelength_nm > *items[i - 1].wavelength_nm)) {
      std::ostringstream msg;
      msg << "scan: duplicate wavelength " << *items[i].wavelength_nm << " nm";
      throw InvalidCounts(msg.str());
    }
  }
}

double reference_flux(const TomographyDataset& data) {
  const auto total = static_cast<double>(data.total_counts());
  const double cells = static_cast<double>(data.counts.size());
  if (total <= 0.0 || cells == 0.0) return 1.0;
  return total / (data.integration_s * cells * 0.5);
}

// -----------------------------------------------------------------------------
// Likelihood

namespace {

StateSet input_states(const TomographyDataset& data, const StateSet& basis) {
  return basis.select(data.input_labels);
}

}  // namespace

ProcessLikelihood::ProcessLikelihood(const TomographyDataset& data, const StateSet& basis,
                                     double log_flux_scale)
    : mapping_(input_states(data, basis), basis.select(data.output_labels)),
      tau_(data.integration_s),
      reference_flux_(qproc::reference_flux(data)),
      log_flux_scale_(log_flux_scale) {
  data.validate();
  counts_.resize(data.counts.size());
  for (int l = 0; l < data.num_inputs(); ++l) {
    for (int j = 0; j < data.num_outputs(); ++j) {
      counts_(static_cast<Eigen::Index>(l) * data.num_outputs() + j) =
          static_cast<double>(data.counts(l, j));
    }
  }
}

double ProcessLikelihood::from_probabilities(const RealVector& probabilities,
                                             double flux) const noexcept {
  const double scale = flux * tau_;
  double ll = 0.0;
  for (Eigen::Index r = 0; r < counts_.size(); ++r) {
    const double mean = scale * probabilities(r);
    const double n = counts_(r);
    if (n > 0.0) {
      if (!(mean > 0.0)) return -std::numeric_limits<double>::infinity();
      ll += n * std::log(mean);
    }
    ll -= mean;
  }
  return ll;
}

double ProcessLikelihood::operator()(const KrausSet& channel, const FluxParam& flux) const {
  const RealMatrix p = outcome_probabilities(mapping_, channel);
  RealVector flat(p.size());
  for (int l = 0; l < p.rows(); ++l) {
    for (int j = 0; j < p.cols(); ++j) flat(static_cast<Eigen::Index>(l) * p.cols() + j) = p(l, j);
  }
  const double ll = from_probabilities(flat, flux.flux());
  if (std::isinf(ll)) {
    throw InvalidCounts("log_likelihood: counts observed where the model predicts none");
  }
  return ll;
}

double log_likelihood(const TomographyDataset& data, const KrausSet& channel,
                      const FluxParam& flux, const StateSet& basis) {
  ProcessLikelihood ll(data, basis, flux.log_scale);
  return ll(channel, flux);
}

// -----------------------------------------------------------------------------
// Simulation

namespace {

CountMatrix draw_counts(const RealMatrix& mean, SimulationMode mode, std::uint64_t seed) {
  CountMatrix counts(mean.rows(), mean.cols());
  std::mt19937_64 rng(seed);
  for (Eigen::Index l = 0; l < mean.rows(); ++l) {
    for (Eigen::Index j = 0; j < mean.cols(); ++j) {
      if (mode == SimulationMode::kNoiseless) {
        counts(l, j) = std::llround(mean(l, j));
      } else {
        std::poisson_distribution<std::int64_t> poisson(mean(l, j));
        counts(l, j) = mean(l, j) > 0.0 ? poisson(rng) : 0;
      }
    }
  }
  return counts;
}

}  // namespace

TomographyDataset simulate_counts(const KrausSet& channel, double flux_mean, double tau,
                                  SimulationMode mode, std::uint64_t seed,
                                  const StateSet& basis) {
  std::vector<int> all(static_cast<std::size_t>(basis.size()));
  for (int i = 0; i < basis.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return simulate_counts(channel, flux_mean, tau, mode, seed, all, all, basis);
}

TomographyDataset simulate_counts(const KrausSet& channel, double flux_mean, double tau,
                                  SimulationMode mode, std::uint64_t seed,
                                  const std::vector<int>& inputs, const std::vector<int>& outputs,
                                  const StateSet& basis) {
  if (!(flux_mean > 0.0)) throw InvalidCounts("simulate_counts: flux must be positive");
  if (!(tau > 0.0)) throw InvalidCounts("simulate_counts: integration time must be positive");
  const MappingMatrix m(basis.select(inputs), basis.select(outputs));
  const RealMatrix mean = outcome_probabilities(m, channel) * (flux_mean * tau);

  TomographyDataset data;
  data.integration_s = tau;
  data.input_labels = inputs;
  data.output_labels = outputs;
  data.counts = draw_counts(mean, mode, seed);
  return data;
}

TomographyDataset simulate_state_counts(const DensityMatrix& rho, double flux_mean, double tau,
                                        SimulationMode mode, std::uint64_t seed,
                                        const StateSet& basis) {
  if (!(flux_mean > 0.0)) throw InvalidCounts("simulate_state_counts: flux must be positive");
  if (!(tau > 0.0)) throw InvalidCounts("simulate_state_counts: integration time must be positive");
  if (rho.dim() != basis.dim()) throw DimensionMismatch("simulate_state_counts: dimension mismatch");
  RealMatrix mean(1, basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    const ComplexVector& psi = basis[j].amplitudes();
    const double p = (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
    mean(0, j) = std::clamp(p, 0.0, 1.0) * flux_mean * tau;
  }
  TomographyDataset data;
  data.integration_s = tau;
  data.input_labels = {kNoPreparation};
  for (int j = 0; j < basis.size(); ++j) data.output_labels.push_back(j);
  data.counts = draw_counts(mean, mode, seed);
  return data;
}

}  // namespace qproc
