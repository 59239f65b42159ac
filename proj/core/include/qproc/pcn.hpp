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

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qproc/linalg.hpp"

namespace qproc {

/// Chain settings. Every real coordinate has a standard normal prior.
struct ChainConfig {
  double beta = 0.1;              // initial pCN step in (0, 1]
  int retained_samples = 1024;    // R
  std::int64_t thinning = 2048;   // T
  std::optional<std::int64_t> burn_in;  // default: 10% of R * T
  std::uint64_t seed = 1;
  double target_acceptance = 0.234;
  bool adapt_beta = true;         // Robbins-Monro during burn-in only

  std::int64_t effective_burn_in() const;
  /// Throws BadSpec on out-of-range fields.
  void validate() const;
};

struct ChainResult {
  RealMatrix samples;        // R x dimension, one retained state per row
  RealVector log_likelihoods;  // per retained state
  double acceptance_rate = 0.0;  // over post-burn-in steps
  double final_beta = 0.0;
  std::int64_t burn_in_steps = 0;
  std::int64_t sampling_steps = 0;
};

/// A log-likelihood over R^n with an implicit N(0, I) prior. Returning -inf
/// marks a degenerate point (rejected by the sampler).
template <class T>
concept PcnTarget = requires(T& target, std::span<const double> x) {
  { target.dimension() } -> std::convertible_to<std::size_t>;
  { target.log_likelihood(x) } -> std::convertible_to<double>;
};

struct ChainState {
  RealVector x;
  double log_likelihood = -std::numeric_limits<double>::infinity();
};

/// Deterministic generator for a chain seed.
inline std::mt19937_64 make_chain_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

/// Independent N(0, 1) draw of every coordinate.
template <class Rng>
void draw_prior(RealVector& out, std::size_t dimension, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  out.resize(static_cast<Eigen::Index>(dimension));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = normal(rng);
}

/// One pCN transition: x' = sqrt(1 - beta^2) x + beta xi, accepted with
/// probability min(1, exp(LL(x') - LL(x))). `proposal` is scratch space.
template <PcnTarget Target, class Rng>
bool pcn_step(Target& target, ChainState& state, double beta, Rng& rng, RealVector& proposal) {
  draw_prior(proposal, target.dimension(), rng);
  const double keep = std::sqrt(std::max(0.0, 1.0 - beta * beta));
  proposal = keep * state.x + beta * proposal;
  const double ll = target.log_likelihood(std::span<const double>(proposal.data(),
                                                                  static_cast<std::size_t>(proposal.size())));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double u = uniform(rng);
  if (std::isnan(ll) || ll == -std::numeric_limits<double>::infinity()) return false;
  const double log_ratio = ll - state.log_likelihood;
  if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
    state.x.swap(proposal);
    state.log_likelihood = ll;
    return true;
  }
  return false;
}

/// Gain of the multiplicative beta update at burn-in step t.
inline double adaptation_gain(std::int64_t t) {
  return 1.0 / std::pow(1.0 + static_cast<double>(t) / 50.0, 0.6);
}

/// Runs burn-in (adapting beta when enabled), then R*T steps keeping every
/// T-th state. Identical (target, config) give bit-identical results.
template <PcnTarget Target>
ChainResult run_pcn(Target& target, const ChainConfig& config) {
  config.validate();
  const std::size_t n = target.dimension();
  auto rng = make_chain_rng(config.seed);

  ChainState state;
  // Start from a prior draw with finite likelihood.
  for (int attempt = 0; attempt < 10000; ++attempt) {
    draw_prior(state.x, n, rng);
    state.log_likelihood =
        target.log_likelihood(std::span<const double>(state.x.data(), n));
    if (std::isfinite(state.log_likelihood)) break;
  }
  if (!std::isfinite(state.log_likelihood)) {
    state.log_likelihood = -std::numeric_limits<double>::max();
  }

  RealVector scratch(static_cast<Eigen::Index>(n));
  double log_beta = std::log(config.beta);
  const std::int64_t burn_in = config.effective_burn_in();
  for (std::int64_t t = 0; t < burn_in; ++t) {
    const bool accepted = pcn_step(target, state, std::exp(log_beta), rng, scratch);
    if (config.adapt_beta) {
      log_beta += adaptation_gain(t) * ((accepted ? 1.0 : 0.0) - config.target_acceptance);
      log_beta = std::clamp(log_beta, std::log(1e-9), 0.0);
    }
  }
  const double beta = std::exp(log_beta);

  ChainResult result;
  result.samples.resize(config.retained_samples, static_cast<Eigen::Index>(n));
  result.log_likelihoods.resize(config.retained_samples);
  std::int64_t accepted_count = 0;
  for (int s = 0; s < config.retained_samples; ++s) {
    for (std::int64_t t = 0; t < config.thinning; ++t) {
      if (pcn_step(target, state, beta, rng, scratch)) ++accepted_count;
    }
    result.samples.row(s) = state.x.transpose();
    result.log_likelihoods(s) = state.log_likelihood;
  }
  result.burn_in_steps = burn_in;
  result.sampling_steps = static_cast<std::int64_t>(config.retained_samples) * config.thinning;
  result.acceptance_rate =
      static_cast<double>(accepted_count) / static_cast<double>(result.sampling_steps);
  result.final_beta = beta;
  return result;
}

/// Sample mean and (R - 1)-normalized standard deviation.
struct Summary {
  double mean = 0.0;
  double std = 0.0;
};

/// Throws EmptyData for fewer than two values.
Summary posterior_summary(std::span<const double> values);

template <class Samples, class Functional>
Summary posterior_summary(const Samples& samples, Functional&& functional) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(samples.size()));
  for (int s = 0; s < samples.size(); ++s) values.push_back(functional(samples, s));
  return posterior_summary(values);
}

/// One entry of a thinning-doubling trace.
struct ConvergencePoint {
  std::int64_t thinning = 0;
  Summary metric;
  double acceptance_rate = 0.0;
};

struct ConvergenceOptions {
  std::int64_t min_thinning = 4;          // 2^2
  std::int64_t max_thinning = 1 << 18;    // 2^18
  double mean_tolerance = 0.0;            // absolute floor
  double std_tolerance = 0.0;             // absolute floor
  /// Also accept differences within this many Monte-Carlo standard errors.
  double standard_errors = 3.0;
};

struct ConvergenceTrace {
  std::int64_t chosen_thinning = 0;
  bool converged = false;  // false means the ceiling was reached (NoConvergence)
  std::vector<ConvergencePoint> points;
};

/// Whether two successive doublings agree in mean and std of the metric.
bool summaries_agree(const ConvergencePoint& coarse, const ConvergencePoint& fine, int retained,
                     const ConvergenceOptions& options);

/// Runs `run_at(T)` for T = min, 2 min, ... and returns the smallest T for
/// which (T, 2T) and (2T, 4T) both agree, or the ceiling with converged =
/// false. `run_at` returns the metric summary and the acceptance rate.
ConvergenceTrace convergence_doubling(
    const std::function<ConvergencePoint(std::int64_t thinning)>& run_at, int retained,
    const ConvergenceOptions& options = {});

}  // namespace qproc
