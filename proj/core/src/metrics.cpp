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

#include "qproc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qproc/errors.hpp"

namespace qproc {

double unitarity(const KrausSet& channel) {
  if (channel.dim() != 2) throw UnsupportedDimension("unitarity: defined for D = 2 only");
  const ComplexMatrix t = to_liouville(channel).unital_block();
  return std::clamp(t.squaredNorm() / 3.0, 0.0, 1.0);
}

double entropy_exchange(const DensityMatrix& rho, const KrausSet& channel) {
  if (rho.dim() != channel.dim()) {
    throw DimensionMismatch("entropy_exchange: state and channel dimensions differ");
  }
  const int k_count = channel.choi_rank();
  ComplexMatrix w(k_count, k_count);
  std::vector<ComplexMatrix> a_rho;
  a_rho.reserve(static_cast<std::size_t>(k_count));
  for (const auto& a : channel.operators()) a_rho.push_back(a * rho.matrix());
  for (int mu = 0; mu < k_count; ++mu) {
    for (int nu = 0; nu < k_count; ++nu) {
      // Tr[A_mu rho A_nu^dag] = sum_ij (A_mu rho)_ij conj((A_nu)_ij)
      w(mu, nu) = (a_rho[static_cast<std::size_t>(mu)].array() *
                   channel[static_cast<std::size_t>(nu)].array().conjugate())
                      .sum();
    }
  }
  return std::max(0.0, linalg::entropy_bits(w));
}

double coherent_information(const DensityMatrix& rho, const KrausSet& channel) {
  return von_neumann_entropy(apply_channel(channel, rho)) - entropy_exchange(rho, channel);
}

double process_fidelity(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("process_fidelity: Choi dimensions differ");
  const ComplexMatrix root_a = linalg::psd_sqrt(a.matrix());
  const ComplexMatrix inner = root_a * b.matrix() * root_a;
  const RealVector lambda = linalg::hermitian_eigenvalues(inner);
  double tr = 0.0;
  for (double l : lambda) tr += std::sqrt(std::max(l, 0.0));
  return std::clamp(tr * tr, 0.0, 1.0);
}

std::vector<double> relative_process_fidelity(std::span<const ChoiMatrix> scan) {
  if (scan.empty()) throw EmptyData("relative_process_fidelity: empty scan");
  std::vector<double> out;
  out.reserve(scan.size());
  out.push_back(1.0);
  for (std::size_t i = 1; i < scan.size(); ++i) out.push_back(process_fidelity(scan[i], scan[0]));
  return out;
}

// -----------------------------------------------------------------------------
// Mixing probability

namespace {

struct HvTotals {
  double counts = 0.0;
  int rows = 0;
};

HvTotals hv_totals(const TomographyDataset& data) {
  HvTotals t;
  bool any_column = false;
  for (int j = 0; j < data.num_outputs(); ++j) {
    const int label = data.output_labels[static_cast<std::size_t>(j)];
    if (label != kH && label != kV) continue;
    any_column = true;
    for (int l = 0; l < data.num_inputs(); ++l) t.counts += static_cast<double>(data.counts(l, j));
  }
  if (any_column) t.rows = data.num_inputs();
  return t;
}

}  // namespace

MixingEstimate mixing_probability_from_counts(const TomographyDataset& signal_only,
                                              const TomographyDataset& noise_only) {
  signal_only.validate();
  noise_only.validate();
  const HvTotals signal = hv_totals(signal_only);
  const HvTotals noise = hv_totals(noise_only);
  if (signal.rows == 0 || noise.rows == 0) {
    throw EmptyData("mixing_probability_from_counts: datasets lack H/V projector rows");
  }
  // Rates per preparation, so a six-input signal scan compares with a single noise row.
  const double scale_s = signal_only.integration_s * signal.rows;
  const double scale_n = noise_only.integration_s * noise.rows;
  const double rate_s = signal.counts / scale_s;
  const double rate_n = noise.counts / scale_n;
  const double total = rate_s + rate_n;
  if (!(total > 0.0)) throw EmptyData("mixing_probability_from_counts: no H/V counts");
  MixingEstimate est;
  est.p_m = rate_n / total;
  // Var(N / s) = N / s^2 for Poisson N.
  const double d_noise = rate_s / (total * total);
  const double d_signal = -rate_n / (total * total);
  const double var = d_noise * d_noise * noise.counts / (scale_n * scale_n) +
                     d_signal * d_signal * signal.counts / (scale_s * scale_s);
  est.std = std::sqrt(var);
  return est;
}

// -----------------------------------------------------------------------------
// Inunitarity

std::vector<InunitarityPoint> inunitarity_curve(
    const std::function<KrausSet(double)>& family, std::span<const double> grid) {
  std::vector<InunitarityPoint> out;
  out.reserve(grid.size());
  for (double p : grid) out.push_back({p, 1.0 - unitarity(family(p))});
  return out;
}

std::vector<InunitarityPoint> inunitarity_curve(ModelFamily family, std::span<const double> grid) {
  return inunitarity_curve([family](double p) { return make_model(family, MixingProbability(p)); },
                           grid);
}

}  // namespace qproc
