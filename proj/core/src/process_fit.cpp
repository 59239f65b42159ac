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

#include "qproc/process_fit.hpp"

#include <limits>
#include <sstream>

#include "qproc/errors.hpp"

namespace qproc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// H^{-1/2} by eigendecomposition without exceptions; false if near-singular.
template <class Matrix>
bool inverse_sqrt_into(const Matrix& h, Matrix& out) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) return false;
  const auto& lambda = solver.eigenvalues();
  const double largest = lambda.maxCoeff();
  const double smallest = lambda.minCoeff();
  if (!(largest > 0.0) || !(smallest > linalg::kNearSingularRatio * largest)) return false;
  const auto& v = solver.eigenvectors();
  out.noalias() = v * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * v.adjoint();
  return true;
}

}  // namespace

// -----------------------------------------------------------------------------
// ChannelParams

RealVector ChannelParams::to_real() const {
  RealVector x(static_cast<Eigen::Index>(real_dimension()));
  for (std::size_t i = 0; i < y.size(); ++i) {
    x(static_cast<Eigen::Index>(2 * i)) = y[i].real();
    x(static_cast<Eigen::Index>(2 * i + 1)) = y[i].imag();
  }
  x(x.size() - 1) = z;
  return x;
}

ChannelParams ChannelParams::from_real(std::span<const double> x) {
  if (x.size() % 2 != 1) throw DimensionMismatch("ChannelParams: real vector length must be odd");
  ChannelParams p;
  p.y.resize(x.size() / 2);
  for (std::size_t i = 0; i < p.y.size(); ++i) p.y[i] = Complex(x[2 * i], x[2 * i + 1]);
  p.z = x.back();
  return p;
}

// -----------------------------------------------------------------------------
// ProcessTarget

ProcessTarget::ProcessTarget(const TomographyDataset& data, ProcessFitOptions options,
                             const StateSet& basis)
    : dim_(basis.dim()),
      choi_rank_(options.choi_rank > 0 ? options.choi_rank : basis.dim() * basis.dim()),
      reference_flux_(qproc::reference_flux(data)),
      log_flux_scale_(options.log_flux_scale) {
  if (choi_rank_ > dim_ * dim_) {
    throw DimensionMismatch("ProcessTarget: Choi rank exceeds D^2");
  }
  if (!data.empty()) likelihood_.emplace(data, basis, log_flux_scale_);
  stacked_.resize(choi_rank_ * dim_, dim_);
  columns_.resize(dim_ * dim_, choi_rank_);
}

double ProcessTarget::log_likelihood(std::span<const double> x) {
  if (!likelihood_) return 0.0;
  const int d = dim_;
  const int k_count = choi_rank_;
  for (int row = 0; row < k_count * d; ++row) {
    for (int col = 0; col < d; ++col) {
      const std::size_t i = static_cast<std::size_t>(row) * d + col;
      stacked_(row, col) = Complex(x[2 * i], x[2 * i + 1]);
    }
  }

  if (d == 2) {
    const Eigen::Matrix2cd h = stacked_.adjoint() * stacked_;
    Eigen::Matrix2cd inv_sqrt;
    if (!inverse_sqrt_into(h, inv_sqrt)) return kNegInf;
    for (int k = 0; k < k_count; ++k) {
      const Eigen::Matrix2cd a = stacked_.middleRows<2>(2 * k) * inv_sqrt;
      columns_(0, k) = a(0, 0);
      columns_(1, k) = a(0, 1);
      columns_(2, k) = a(1, 0);
      columns_(3, k) = a(1, 1);
    }
  } else {
    const ComplexMatrix h = stacked_.adjoint() * stacked_;
    ComplexMatrix inv_sqrt(d, d);
    if (!inverse_sqrt_into(h, inv_sqrt)) return kNegInf;
    const ComplexMatrix a = stacked_ * inv_sqrt;
    for (int k = 0; k < k_count; ++k) {
      for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) columns_(m * d + n, k) = a(k * d + m, n);
      }
    }
  }

  v_.noalias() = likelihood_->mapping().matrix().lazyProduct(columns_);
  probabilities_ = v_.rowwise().squaredNorm();
  const double flux = reference_flux_ * std::exp(log_flux_scale_ * x.back());
  return likelihood_->from_probabilities(probabilities_, flux);
}

KrausSet ProcessTarget::channel(std::span<const double> x) const {
  const ChannelParams p = ChannelParams::from_real(x);
  return kraus_from_params(p.y, dim_, choi_rank_);
}

FluxParam ProcessTarget::flux(std::span<const double> x) const {
  return {x.back(), reference_flux_, log_flux_scale_};
}

// -----------------------------------------------------------------------------
// PosteriorSamples

PosteriorSamples::PosteriorSamples(int dim, int choi_rank, ChainConfig config, ChainResult chain,
                                   double reference_flux, double log_flux_scale)
    : dim_(dim),
      choi_rank_(choi_rank),
      config_(std::move(config)),
      chain_(std::move(chain)),
      reference_flux_(reference_flux),
      log_flux_scale_(log_flux_scale) {
  const auto expected = static_cast<Eigen::Index>(2 * choi_rank_ * dim_ * dim_ + 1);
  if (chain_.samples.cols() != expected) {
    throw DimensionMismatch("PosteriorSamples: sample width does not match D and K");
  }
}

ChannelParams PosteriorSamples::params(int s) const {
  const RealVector row = chain_.samples.row(s).transpose();
  return ChannelParams::from_real(
      std::span<const double>(row.data(), static_cast<std::size_t>(row.size())));
}

KrausSet PosteriorSamples::channel(int s) const {
  return kraus_from_params(params(s).y, dim_, choi_rank_);
}

std::vector<KrausSet> PosteriorSamples::channels() const {
  std::vector<KrausSet> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int s = 0; s < size(); ++s) out.push_back(channel(s));
  return out;
}

std::vector<ChoiMatrix> PosteriorSamples::chois() const {
  std::vector<ChoiMatrix> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int s = 0; s < size(); ++s) out.push_back(to_choi(channel(s)));
  return out;
}

ChoiMatrix PosteriorSamples::mean_choi() const {
  const auto all = chois();
  return ChoiMatrix::average(all);
}

// -----------------------------------------------------------------------------
// Drivers

PosteriorSamples run_chain(const TomographyDataset& data, const ChainConfig& config,
                           ProcessFitOptions options, const StateSet& basis) {
  ProcessTarget target(data, options, basis);
  ChainResult chain = run_pcn(target, config);
  return PosteriorSamples(target.dim(), target.choi_rank(), config, std::move(chain),
                          target.reference_flux(), target.log_flux_scale());
}

ConvergenceTrace convergence_doubling(
    const TomographyDataset& data, const ChainConfig& base_config,
    const std::function<double(const PosteriorSamples&, int sample)>& metric,
    const ConvergenceOptions& options, ProcessFitOptions fit_options) {
  auto run_at = [&](std::int64_t thinning) {
    ChainConfig config = base_config;
    config.thinning = thinning;
    const PosteriorSamples posterior = run_chain(data, config, fit_options);
    std::vector<double> values(static_cast<std::size_t>(posterior.size()));
    for (int s = 0; s < posterior.size(); ++s) values[static_cast<std::size_t>(s)] = metric(posterior, s);
    ConvergencePoint point;
    point.thinning = thinning;
    point.metric = posterior_summary(values);
    point.acceptance_rate = posterior.acceptance_rate();
    return point;
  };
  return convergence_doubling(run_at, base_config.retained_samples, options);
}

}  // namespace qproc
