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

#include "qproc/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qproc/errors.hpp"

namespace qproc {
namespace {

void check_density(const ComplexMatrix& m, double herm_tol, double trace_tol,
                   double eig_tol, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidState(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw InvalidState(std::string(what) + ": non-finite entries");
  }
  const double herm = linalg::hermiticity_error(m);
  if (herm > herm_tol) {
    std::ostringstream msg;
    msg << what << ": not Hermitian (error " << herm << ")";
    throw InvalidState(msg.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > trace_tol) {
    std::ostringstream msg;
    msg << what << ": trace " << tr << " differs from 1";
    throw InvalidState(msg.str());
  }
  const double min_eig = linalg::hermitian_eigenvalues(m).minCoeff();
  if (min_eig < eig_tol) {
    std::ostringstream msg;
    msg << what << ": negative eigenvalue " << min_eig;
    throw InvalidState(msg.str());
  }
}

}  // namespace

// -----------------------------------------------------------------------------
// PureState

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw InvalidState("PureState: empty amplitude vector");
  if (!amplitudes_.allFinite()) throw InvalidState("PureState: non-finite amplitude");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "PureState: squared norm " << norm2 << " is not 1";
    throw InvalidState(msg.str());
  }
}

ComplexMatrix PureState::projector() const {
  return amplitudes_ * amplitudes_.adjoint();
}

// -----------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  check_density(entries_, kHermitianTol, kTraceTol, kEigenvalueTol, "DensityMatrix");
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::from_bloch(double rx, double ry, double rz) {
  const double norm = std::sqrt(rx * rx + ry * ry + rz * rz);
  if (norm > 1.0 + 1e-12) {
    throw InvalidState("DensityMatrix::from_bloch: Bloch vector outside the unit ball");
  }
  ComplexMatrix rho = 0.5 * (pauli::identity() + rx * pauli::x() + ry * pauli::y() +
                             rz * pauli::z());
  return DensityMatrix(std::move(rho));
}

// -----------------------------------------------------------------------------
// KrausSet

KrausSet::KrausSet(std::vector<ComplexMatrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw InvalidState("KrausSet: no operators");
  dim_ = static_cast<int>(operators_.front().rows());
  if (dim_ < 1) throw InvalidState("KrausSet: zero-dimensional operator");
  for (const auto& a : operators_) {
    if (a.rows() != dim_ || a.cols() != dim_) {
      throw InvalidState("KrausSet: operators must all be DxD");
    }
    if (!a.allFinite()) throw InvalidState("KrausSet: non-finite operator entry");
  }
  const double err = trace_preserving_error();
  if (err > kTracePreservingTol) {
    std::ostringstream msg;
    msg << "KrausSet: not trace preserving (||sum A^dag A - I||_F = " << err << ")";
    throw InvalidState(msg.str());
  }
}

KrausSet KrausSet::identity(int dim) {
  return KrausSet({ComplexMatrix::Identity(dim, dim)});
}

double KrausSet::trace_preserving_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& a : operators_) sum.noalias() += a.adjoint() * a;
  return (sum - ComplexMatrix::Identity(dim_, dim_)).norm();
}

ComplexMatrix KrausSet::apply(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw DimensionMismatch("KrausSet::apply: operator dimension does not match channel");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& a : operators_) out.noalias() += a * m * a.adjoint();
  return out;
}

KrausSet KrausSet::padded_to(int k) const {
  std::vector<ComplexMatrix> ops = operators_;
  while (static_cast<int>(ops.size()) < k) ops.push_back(ComplexMatrix::Zero(dim_, dim_));
  return KrausSet(std::move(ops));
}

// -----------------------------------------------------------------------------
// ChoiMatrix

ChoiMatrix::ChoiMatrix(int dim, ComplexMatrix entries) : dim_(dim), entries_(std::move(entries)) {
  if (dim < 1 || entries_.rows() != dim * dim || entries_.cols() != dim * dim) {
    throw InvalidState("ChoiMatrix: entries must be D^2 x D^2");
  }
  check_density(entries_, kHermitianTol, kTraceTol, kEigenvalueTol, "ChoiMatrix");
}

ChoiMatrix ChoiMatrix::average(std::span<const ChoiMatrix> items) {
  if (items.empty()) throw EmptyData("ChoiMatrix::average: empty list");
  const int dim = items.front().dim();
  ComplexMatrix sum = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (const auto& c : items) {
    if (c.dim() != dim) throw DimensionMismatch("ChoiMatrix::average: mixed dimensions");
    sum += c.matrix();
  }
  sum /= static_cast<double>(items.size());
  // Restore exact Hermiticity and unit trace lost to accumulation rounding.
  sum = 0.5 * (sum + sum.adjoint()).eval();
  sum /= sum.trace().real();
  return ChoiMatrix(dim, std::move(sum));
}

// -----------------------------------------------------------------------------
// LiouvilleMatrix

LiouvilleMatrix::LiouvilleMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != 4 || entries_.cols() != 4) {
    throw UnsupportedDimension("LiouvilleMatrix: only qubit (4x4) transfer matrices");
  }
}

ComplexMatrix LiouvilleMatrix::unital_block() const {
  return entries_.bottomRightCorner(3, 3);
}

ComplexVector LiouvilleMatrix::nonunital_vector() const {
  return entries_.col(0).tail(3);
}

// -----------------------------------------------------------------------------
// Pauli matrices

namespace pauli {
ComplexMatrix identity() {
  return ComplexMatrix::Identity(2, 2);
}
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << Complex(0.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0, 0.0);
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

// -----------------------------------------------------------------------------
// Operations

KrausSet kraus_from_params(std::span<const Complex> y, int dim, int choi_rank) {
  if (dim < 1 || choi_rank < 1) {
    throw DimensionMismatch("kraus_from_params: dim and choi_rank must be positive");
  }
  const std::size_t block = static_cast<std::size_t>(dim) * dim;
  if (y.size() != block * choi_rank) {
    std::ostringstream msg;
    msg << "kraus_from_params: expected " << block * choi_rank << " parameters, got "
        << y.size();
    throw DimensionMismatch(msg.str());
  }
  // Stacked KD x D matrix of all G_k, filled row by row.
  ComplexMatrix stacked(choi_rank * dim, dim);
  for (int row = 0; row < choi_rank * dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      stacked(row, col) = y[static_cast<std::size_t>(row) * dim + col];
    }
  }
  if (!stacked.allFinite()) throw NearSingular("kraus_from_params: non-finite parameters");
  const ComplexMatrix h = stacked.adjoint() * stacked;
  const ComplexMatrix inv_sqrt = linalg::hermitian_inverse_sqrt(h);
  const ComplexMatrix a = stacked * inv_sqrt;

  std::vector<ComplexMatrix> ops;
  ops.reserve(choi_rank);
  for (int k = 0; k < choi_rank; ++k) ops.emplace_back(a.middleRows(k * dim, dim));
  try {
    return KrausSet(std::move(ops));
  } catch (const InvalidState& e) {
    throw NearSingular(std::string("kraus_from_params: ill-conditioned H; ") + e.what());
  }
}

DensityMatrix apply_channel(const KrausSet& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) {
    throw DimensionMismatch("apply_channel: channel and state dimensions differ");
  }
  ComplexMatrix out = channel.apply(rho.matrix());
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

ChoiMatrix to_choi(const KrausSet& channel) {
  const int d = channel.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  // sum_k vec(A_k) vec(A_k)^dag with vec stacking columns of A_k gives block
  // (i, j) = E(|i><j|).
  for (const auto& a : channel.operators()) {
    ComplexVector v(d * d);
    for (int i = 0; i < d; ++i) {
      for (int r = 0; r < d; ++r) v(i * d + r) = a(r, i);
    }
    choi.noalias() += v * v.adjoint();
  }
  choi /= static_cast<double>(d);
  choi = 0.5 * (choi + choi.adjoint()).eval();
  return ChoiMatrix(d, std::move(choi));
}

LiouvilleMatrix to_liouville(const KrausSet& channel) {
  if (channel.dim() != 2) {
    throw UnsupportedDimension("to_liouville: Pauli basis is defined for D = 2 only");
  }
  // Unnormalized Paulis with the 1/2 applied once keeps Pauli channels exact.
  const ComplexMatrix basis[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  ComplexMatrix l(4, 4);
  for (int nu = 0; nu < 4; ++nu) {
    const ComplexMatrix out = channel.apply(basis[nu]);
    for (int mu = 0; mu < 4; ++mu) l(mu, nu) = 0.5 * (basis[mu].adjoint() * out).trace();
  }
  return LiouvilleMatrix(std::move(l));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const double s = linalg::entropy_bits(rho.matrix());
  return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.dim())));
}

double purity(const DensityMatrix& rho) {
  // Tr rho^2 = ||rho||_F^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

}  // namespace qproc
