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

#include "qproc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qproc/errors.hpp"

namespace qproc::linalg {

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("hermiticity check on a non-square matrix");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_error(m) <= tol;
}

bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw DimensionMismatch("hermitian_inverse_sqrt needs a non-empty square matrix");
  }
  if (!h.allFinite()) {
    throw NearSingular("hermitian_inverse_sqrt: non-finite entries");
  }
  if (hermiticity_error(h) > 1e-10) {
    throw InvalidState("hermitian_inverse_sqrt: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const RealVector& lambda = solver.eigenvalues();
  const double largest = lambda.maxCoeff();
  const double smallest = lambda.minCoeff();
  if (!(largest > 0.0) || smallest <= kNearSingularRatio * largest) {
    std::ostringstream msg;
    msg << "hermitian_inverse_sqrt: eigenvalue ratio " << smallest / largest
        << " below " << kNearSingularRatio;
    throw NearSingular(msg.str());
  }
  const ComplexMatrix& v = solver.eigenvectors();
  const RealVector scale = lambda.cwiseSqrt().cwiseInverse();
  return v * scale.asDiagonal() * v.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const ComplexMatrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  const RealVector root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix& v = solver.eigenvectors();
  return v * root.asDiagonal() * v.adjoint();
}

double entropy_bits(const RealVector& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return s;
}

double entropy_bits(const ComplexMatrix& h) {
  return entropy_bits(hermitian_eigenvalues(h));
}

}  // namespace qproc::linalg
