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

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qproc/pcn.hpp"
#include "qproc/quantum.hpp"
#include "qproc/tomography.hpp"

namespace qproc {

/// MCMC state for process tomography: y (K*D^2 complex) and the flux
/// coordinate z. Real layout is [Re y_1, Im y_1, ..., Re y_n, Im y_n, z].
struct ChannelParams {
  std::vector<Complex> y;
  double z = 0.0;

  std::size_t real_dimension() const { return 2 * y.size() + 1; }
  RealVector to_real() const;
  static ChannelParams from_real(std::span<const double> x);
};

/// y_j ~ N(0,1) + iN(0,1), z ~ N(0,1).
template <class Rng>
ChannelParams sample_prior(int dim, int choi_rank, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ChannelParams p;
  const std::size_t n = static_cast<std::size_t>(choi_rank) * dim * dim;
  p.y.resize(n);
  for (auto& v : p.y) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = Complex(re, im);
  }
  p.z = normal(rng);
  return p;
}

struct ProcessFitOptions {
  int choi_rank = 0;  // 0 means D^2
  double log_flux_scale = 0.1;
};

/// Poisson likelihood of a process dataset as a function of the real
/// coordinates of ChannelParams. Holds scratch buffers, so one instance per
/// chain. Empty datasets give a flat likelihood.
class ProcessTarget {
 public:
  explicit ProcessTarget(const TomographyDataset& data, ProcessFitOptions options = {},
                         const StateSet& basis = default_state_set());

  int dim() const { return dim_; }
  int choi_rank() const { return choi_rank_; }
  std::size_t dimension() const { return 2u * static_cast<std::size_t>(choi_rank_) * dim_ * dim_ + 1; }
  double reference_flux() const { return reference_flux_; }
  double log_flux_scale() const { return log_flux_scale_; }

  /// -inf when H is near-singular.
  double log_likelihood(std::span<const double> x);

  /// Throws NearSingular for degenerate coordinates.
  KrausSet channel(std::span<const double> x) const;
  FluxParam flux(std::span<const double> x) const;

 private:
  int dim_;
  int choi_rank_;
  double reference_flux_;
  double log_flux_scale_;
  std::optional<ProcessLikelihood> likelihood_;
  // scratch
  ComplexMatrix stacked_;
  ComplexMatrix columns_;
  ComplexMatrix v_;
  RealVector probabilities_;
};

/// Retained chain states plus everything needed to rebuild channels.
class PosteriorSamples {
 public:
  PosteriorSamples(int dim, int choi_rank, ChainConfig config, ChainResult chain,
                   double reference_flux, double log_flux_scale);

  int size() const { return static_cast<int>(chain_.samples.rows()); }
  int dim() const { return dim_; }
  int choi_rank() const { return choi_rank_; }
  const ChainConfig& config() const { return config_; }
  const ChainResult& chain() const { return chain_; }
  double acceptance_rate() const { return chain_.acceptance_rate; }
  double reference_flux() const { return reference_flux_; }
  double log_flux_scale() const { return log_flux_scale_; }

  ChannelParams params(int s) const;
  /// Kraus set of sample s (computed on demand).
  KrausSet channel(int s) const;
  std::vector<KrausSet> channels() const;
  std::vector<ChoiMatrix> chois() const;
  ChoiMatrix mean_choi() const;

 private:
  int dim_;
  int choi_rank_;
  ChainConfig config_;
  ChainResult chain_;
  double reference_flux_;
  double log_flux_scale_;
};

/// One pCN transition on ChannelParams using the configured beta.
template <class Rng>
std::pair<ChannelParams, bool> pcn_step(const ChannelParams& current, const ChainConfig& config,
                                        const TomographyDataset& data, Rng& rng,
                                        ProcessFitOptions options = {}) {
  ProcessTarget target(data, options);
  ChainState state;
  state.x = current.to_real();
  state.log_likelihood = target.log_likelihood(
      std::span<const double>(state.x.data(), static_cast<std::size_t>(state.x.size())));
  RealVector scratch;
  const bool accepted = pcn_step(target, state, config.beta, rng, scratch);
  return {ChannelParams::from_real(
              std::span<const double>(state.x.data(), static_cast<std::size_t>(state.x.size()))),
          accepted};
}

/// Bayesian process tomography of one dataset (D inferred from the basis).
PosteriorSamples run_chain(const TomographyDataset& data, const ChainConfig& config,
                           ProcessFitOptions options = {},
                           const StateSet& basis = default_state_set());

/// Thinning selection by successive doubling; `metric` maps a posterior to
/// per-sample values whose mean/std are tracked.
ConvergenceTrace convergence_doubling(
    const TomographyDataset& data, const ChainConfig& base_config,
    const std::function<double(const PosteriorSamples&, int sample)>& metric,
    const ConvergenceOptions& options = {}, ProcessFitOptions fit_options = {});

}  // namespace qproc
