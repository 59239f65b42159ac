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

#include "qproc/errors.hpp"
#include "qproc/linalg.hpp"

namespace qproc {
namespace {

ComplexMatrix random_positive(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = linalg::random_ginibre(n, n, rng);
  return g * g.adjoint() + 0.1 * ComplexMatrix::Identity(n, n);
}

TEST(Linalg, InverseSqrtSquaresToInverse) {
  std::mt19937_64 rng(3);
  for (int n : {2, 3, 4}) {
    const ComplexMatrix h = random_positive(n, rng);
    const ComplexMatrix s = linalg::hermitian_inverse_sqrt(h);
    EXPECT_LT((s * h * s - ComplexMatrix::Identity(n, n)).norm(), 1e-10);
    EXPECT_LT(linalg::hermiticity_error(s), 1e-12);
  }
}

TEST(Linalg, InverseSqrtRejectsNearSingular) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 1e-16;
  EXPECT_THROW(linalg::hermitian_inverse_sqrt(h), NearSingular);
  h(1, 1) = 1e-12;
  EXPECT_NO_THROW(linalg::hermitian_inverse_sqrt(h));
}

TEST(Linalg, InverseSqrtRejectsNonHermitian) {
  ComplexMatrix h = ComplexMatrix::Identity(2, 2);
  h(0, 1) = 0.5;
  EXPECT_THROW(linalg::hermitian_inverse_sqrt(h), InvalidState);
}

TEST(Linalg, PsdSqrtClipsNegativeEigenvalues) {
  std::mt19937_64 rng(5);
  const ComplexMatrix h = random_positive(4, rng);
  const ComplexMatrix r = linalg::psd_sqrt(h);
  EXPECT_LT((r * r - h).norm(), 1e-10);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = -1e-9;
  const ComplexMatrix rd = linalg::psd_sqrt(d);
  EXPECT_NEAR(rd(0, 0).real(), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(rd(1, 1)), 0.0, 1e-12);
}

TEST(Linalg, EntropyOfKnownSpectra) {
  EXPECT_NEAR(linalg::entropy_bits(ComplexMatrix(ComplexMatrix::Identity(2, 2) * 0.5)), 1.0, 1e-14);
  EXPECT_NEAR(linalg::entropy_bits(ComplexMatrix(ComplexMatrix::Identity(4, 4) * 0.25)), 2.0, 1e-14);
  RealVector pure(2);
  pure << 1.0, 0.0;
  EXPECT_EQ(linalg::entropy_bits(pure), 0.0);
}

TEST(Linalg, RandomUnitaryIsUnitary) {
  std::mt19937_64 rng(9);
  for (int n : {1, 2, 4}) {
    const ComplexMatrix u = linalg::random_unitary(n, rng);
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Linalg, FiniteAndHermitianChecks) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_TRUE(linalg::is_hermitian(m, 0.0));
  EXPECT_TRUE(linalg::all_finite(m));
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(linalg::all_finite(m));
}

}  // namespace
}  // namespace qproc
