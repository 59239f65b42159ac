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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qproc/errors.hpp"
#include "qproc/qst.hpp"

namespace qproc {
namespace {

TEST(StateFromParams, NormalizesAndIsGaugeInvariant) {
  const DensityMatrix mixed = state_from_params(ComplexMatrix::Identity(2, 2) * 3.0);
  EXPECT_LT((mixed.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 1e-15);
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 0) = Complex(0.0, 2.0);
  EXPECT_NEAR(state_from_params(g).matrix()(0, 0).real(), 1.0, 1e-15);

  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = linalg::random_ginibre(2, 2, rng);
    const ComplexMatrix u = oracle::haar_unitary(2, rng);
    EXPECT_LT((state_from_params(h).matrix() - state_from_params(h * u).matrix()).norm(), 1e-13);
  }
  EXPECT_THROW(state_from_params(ComplexMatrix::Zero(2, 2)), NearSingular);
}

TEST(QstLikelihood, MatchesDirectSum) {
  std::mt19937_64 rng(151);
  const ComplexMatrix rho = oracle::random_density(2, rng);
  const TomographyDataset data =
      simulate_state_counts(DensityMatrix(rho), 1e4, 1.0, SimulationMode::kPoisson, 4);
  const FluxParam flux{0.1, 1e4, 0.1};
  double direct = 0.0;
  const StateSet& s = default_state_set();
  for (int j = 0; j < 6; ++j) {
    const double p = s[j].amplitudes().dot(rho * s[j].amplitudes()).real();
    const double mean = flux.flux() * p;
    direct += -mean + static_cast<double>(data.counts(0, j)) * std::log(mean);
  }
  EXPECT_NEAR(qst_likelihood(data, DensityMatrix(rho), flux), direct, 1e-9 * std::abs(direct));
}

TEST(QstLikelihood, RejectsImpossibleCountsAndMultiRowData) {
  TomographyDataset data;
  data.counts = CountMatrix(1, 2);
  data.counts << 10, 3;
  data.input_labels = {kNoPreparation};
  data.output_labels = {kH, kV};
  const FluxParam flux{0.0, 13.0, 0.1};
  EXPECT_THROW(qst_likelihood(data, DensityMatrix::from_bloch(0, 0, 1), flux), InvalidCounts);
  EXPECT_NO_THROW(qst_likelihood(data, DensityMatrix::maximally_mixed(2), flux));
  const TomographyDataset process =
      simulate_counts(KrausSet::identity(2), 10, 1.0, SimulationMode::kNoiseless, 0);
  EXPECT_THROW(qst_likelihood(process, DensityMatrix::maximally_mixed(2), flux), InvalidCounts);
}

TEST(StateTarget, AgreesWithQstLikelihood) {
  std::mt19937_64 rng(157);
  const TomographyDataset data = simulate_state_counts(DensityMatrix(oracle::random_density(2, rng)),
                                                       5e3, 1.0, SimulationMode::kPoisson, 8);
  StateTarget target(data);
  EXPECT_EQ(target.dimension(), 9u);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(9);
    for (auto& v : x) v = normal(rng);
    const FluxParam flux{x.back(), target.reference_flux(), 0.1};
    EXPECT_NEAR(target.log_likelihood(x), qst_likelihood(data, target.state(x), flux), 1e-7);
  }
}

TEST(RunQst, MaximallyMixedState) {
  const TomographyDataset data = simulate_state_counts(DensityMatrix::maximally_mixed(2), 1e5, 1.0,
                                                       SimulationMode::kPoisson, 12);
  ChainConfig c;
  c.retained_samples = 256;
  c.thinning = 64;
  const QstResult r = run_qst(data, c);
  EXPECT_NEAR(r.purity.mean, 0.5, 1e-3);
  EXPECT_EQ(r.states.size(), 256u);
  EXPECT_LT((r.mean_state.matrix() - ComplexMatrix::Identity(2, 2) / 2.0).norm(), 0.01);
}

TEST(RunQst, PureHorizontalState) {
  const TomographyDataset data = simulate_state_counts(DensityMatrix::from_bloch(0, 0, 1), 1e5, 1.0,
                                                       SimulationMode::kNoiseless, 0);
  ChainConfig c;
  c.retained_samples = 256;
  c.thinning = 64;
  const QstResult r = run_qst(data, c);
  EXPECT_GT(r.purity.mean, 0.99);
  EXPECT_GT(r.mean_state.matrix()(0, 0).real(), 0.995);
}

// Truths drawn from the prior: posterior intervals should cover at about
// their nominal rate.
TEST(RunQst, PurityIntervalsAreCalibrated) {
  std::mt19937_64 rng(163);
  int covered = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix truth = state_from_params(linalg::random_ginibre(2, 2, rng));
    const TomographyDataset data =
        simulate_state_counts(truth, 300, 1.0, SimulationMode::kPoisson, 1000 + t);
    ChainConfig c;
    c.retained_samples = 400;
    c.thinning = 16;
    c.seed = 2000 + t;
    const QstResult r = run_qst(data, c);
    std::vector<double> purities;
    for (const auto& s : r.states) purities.push_back(purity(s));
    std::sort(purities.begin(), purities.end());
    const double lo = purities[static_cast<std::size_t>(0.025 * purities.size())];
    const double hi = purities[static_cast<std::size_t>(0.975 * purities.size()) - 1];
    const double p = purity(truth);
    if (p >= lo && p <= hi) ++covered;
  }
  // 95% nominal; binomial sd over 100 trials is about 2.2
  EXPECT_GE(covered, 86);
  EXPECT_LE(covered, 100);
}

}  // namespace
}  // namespace qproc
