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

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace qproc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Relative eigenvalue threshold below which a Hermitian matrix is treated as
/// singular by hermitian_inverse_sqrt.
inline constexpr double kNearSingularRatio = 1e-14;

/// max |M_ij - conj(M_ji)|
double hermiticity_error(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);

bool all_finite(const ComplexMatrix& m);

/// Eigenvalues of the Hermitian part of `m`, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// H^{-1/2} for Hermitian positive-definite H via eigendecomposition.
///
/// Throws NearSingular when min eigenvalue <= kNearSingularRatio * max
/// eigenvalue, and InvalidState if H is not Hermitian within 1e-10.
ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& h);

/// Principal square root of a Hermitian PSD matrix. Negative eigenvalues
/// (rounding noise) are clipped to zero before the root is taken.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// -sum lambda log2 lambda over the eigenvalues of a Hermitian matrix, with
/// eigenvalues <= 0 contributing zero.
double entropy_bits(const ComplexMatrix& h);

/// Same as entropy_bits but for an explicit eigenvalue list.
double entropy_bits(const RealVector& eigenvalues);

/// Haar-random unitary of size n from a complex Ginibre QR with phase fix.
template <class Rng>
ComplexMatrix random_unitary(int n, Rng& rng);

/// Matrix with i.i.d. standard complex normal entries N(0,1) + iN(0,1).
template <class Rng>
ComplexMatrix random_ginibre(int rows, int cols, Rng& rng);

// -----------------------------------------------------------------------------

template <class Rng>
ComplexMatrix random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

template <class Rng>
ComplexMatrix random_unitary(int n, Rng& rng) {
  const ComplexMatrix z = random_ginibre(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

}  // namespace linalg
}  // namespace qproc
