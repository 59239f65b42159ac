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

#include <cstddef>
#include <span>
#include <vector>

#include "qproc/linalg.hpp"

namespace qproc {

/// Normalized state vector |psi>. Construction normalizes nothing; it checks.
class PureState {
 public:
  /// Throws InvalidState unless ||amplitudes||^2 == 1 within 1e-12.
  explicit PureState(ComplexVector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

  /// |psi><psi|
  ComplexMatrix projector() const;

 private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenvalueTol = -1e-10;

  /// Validates against the tolerances above; throws InvalidState.
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix from_pure(const PureState& psi);
  /// rho = (I + r . sigma) / 2 for ||r|| <= 1.
  static DensityMatrix from_bloch(double rx, double ry, double rz);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }

 private:
  ComplexMatrix entries_;
};

/// Ordered Kraus operators {A_k} of a trace-preserving channel on C^D.
///
/// A set produced by compose() may hold more than D^2 operators; everything
/// else keeps K <= D^2.
class KrausSet {
 public:
  static constexpr double kTracePreservingTol = 1e-10;

  /// Throws InvalidState if the operators are empty, not all DxD, or if
  /// ||sum A_k^dag A_k - I||_F > kTracePreservingTol.
  explicit KrausSet(std::vector<ComplexMatrix> operators);

  static KrausSet identity(int dim);

  int dim() const { return dim_; }
  int choi_rank() const { return static_cast<int>(operators_.size()); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const ComplexMatrix& operator[](std::size_t k) const { return operators_[k]; }

  /// ||sum A_k^dag A_k - I||_F
  double trace_preserving_error() const;

  /// Channel action on an arbitrary operator (not necessarily a state).
  ComplexMatrix apply(const ComplexMatrix& m) const;

  /// Copy with zero operators appended up to `k` operators. No-op if K >= k.
  KrausSet padded_to(int k) const;

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> operators_;
};

/// Trace-normalized Choi matrix: D^2 x D^2, block (i, j) = E(|i><j|) / D.
class ChoiMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenvalueTol = -1e-10;

  /// Validates Hermiticity, unit trace and PSD; throws InvalidState.
  ChoiMatrix(int dim, ComplexMatrix entries);

  /// Average of a non-empty list of Choi matrices of equal dimension.
  static ChoiMatrix average(std::span<const ChoiMatrix> items);

  int dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return entries_; }

 private:
  int dim_;
  ComplexMatrix entries_;
};

/// Pauli transfer (Liouville) matrix in the normalized basis
/// {I, X, Y, Z} / sqrt(2): L_{mu nu} = Tr[X_mu^dag E(X_nu)].
///
/// Block form [[1, 0], [x, T]]. Vectorization is with respect to this
/// orthonormal operator basis, so row- versus column-stacking of vec() plays
/// no role.
class LiouvilleMatrix {
 public:
  explicit LiouvilleMatrix(ComplexMatrix entries);

  int dim() const { return 2; }
  const ComplexMatrix& matrix() const { return entries_; }
  /// Unital block T, (D^2 - 1) x (D^2 - 1).
  ComplexMatrix unital_block() const;
  /// Non-unital vector x, length D^2 - 1.
  ComplexVector nonunital_vector() const;

 private:
  ComplexMatrix entries_;
};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

/// Builds A_k = G_k H^{-1/2} with H = sum G_k^dag G_k. Entries of `y` fill
/// G_1, ..., G_K in order, each G_k row-major. Propagates NearSingular, and
/// also raises it when H is so ill-conditioned that the result misses the
/// trace-preserving tolerance.
KrausSet kraus_from_params(std::span<const Complex> y, int dim, int choi_rank);

/// E(rho) = sum A_k rho A_k^dag. Throws DimensionMismatch.
DensityMatrix apply_channel(const KrausSet& channel, const DensityMatrix& rho);

ChoiMatrix to_choi(const KrausSet& channel);

/// Throws UnsupportedDimension unless D = 2.
LiouvilleMatrix to_liouville(const KrausSet& channel);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr rho^2
double purity(const DensityMatrix& rho);

}  // namespace qproc
