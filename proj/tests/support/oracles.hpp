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

// Reference computations that avoid the library's own code paths. Everything
// here works straight from Kraus operators with Eigen.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat sigma(int i) {
  Mat m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, C(0, -1), C(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat act(const std::vector<Mat>& kraus, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& a : kraus) out += a * rho * a.adjoint();
  return out;
}

inline double entropy_bits(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-300) s -= l * std::log2(l);
  }
  return s;
}

// Entropy exchange as the entropy of (E x id)(|psi><psi|) for a purification
// |psi> of rho on system x reference.
inline double stinespring_entropy_exchange(const Mat& rho, const std::vector<Mat>& kraus) {
  const auto d = rho.rows();
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  Vec psi = Vec::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double w = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
    for (Eigen::Index s = 0; s < d; ++s) psi(s * d + i) += w * es.eigenvectors()(s, i);
  }
  Mat joint = Mat::Zero(d * d, d * d);
  for (const auto& a : kraus) {
    Mat big = Mat::Zero(d * d, d * d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index k = 0; k < d; ++k) big(r * d + k, c * d + k) = a(r, c);
    const Vec v = big * psi;
    joint += v * v.adjoint();
  }
  return entropy_bits(joint);
}

inline double coherent_information(const Mat& rho, const std::vector<Mat>& kraus) {
  return entropy_bits(act(kraus, rho)) - stinespring_entropy_exchange(rho, kraus);
}

inline Mat bloch_state(double x, double y, double z) {
  return 0.5 * (sigma(0) + x * sigma(1) + y * sigma(2) + z * sigma(3));
}

// Pauli transfer matrix R_ij = Tr[s_i E(s_j)] / 2.
inline Eigen::Matrix4d pauli_transfer(const std::vector<Mat>& kraus) {
  Eigen::Matrix4d r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = 0.5 * (sigma(i) * act(kraus, sigma(j))).trace().real();
  return r;
}

inline double unitarity(const std::vector<Mat>& kraus) {
  return pauli_transfer(kraus).bottomRightCorner<3, 3>().squaredNorm() / 3.0;
}

// p = sum_k |<psi|A_k|phi>|^2
inline double outcome_probability(const std::vector<Mat>& kraus, const Vec& phi, const Vec& psi) {
  double p = 0.0;
  for (const auto& a : kraus) p += std::norm(psi.dot(a * phi));
  return p;
}

// Choi matrix sum_ij |i><j| x E(|i><j|) / D, in the (input, output) ordering.
inline Mat choi(const std::vector<Mat>& kraus) {
  const auto d = kraus.front().rows();
  Mat j = Mat::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      Mat e = Mat::Zero(d, d);
      e(a, b) = 1.0;
      j.block(a * d, b * d, d, d) = act(kraus, e) / static_cast<double>(d);
    }
  }
  return j;
}

inline Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd l = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

inline double fidelity(const Mat& a, const Mat& b) {
  const Mat ra = psd_sqrt(a);
  Eigen::SelfAdjointEigenSolver<Mat> es(ra * b * ra);
  double t = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) t += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  return t * t;
}

template <class Rng>
Mat haar_unitary(int d, Rng& rng) {
  std::normal_distribution<double> n;
  Mat z(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) z(r, c) = C(n(rng), n(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  const Mat rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) q.col(i) *= rr(i, i) / std::abs(rr(i, i));
  return q;
}

template <class Rng>
Mat random_density(int d, Rng& rng) {
  std::normal_distribution<double> n;
  Mat g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = C(n(rng), n(rng));
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Random CPTP map with k Kraus operators: blocks of an isometry.
template <class Rng>
std::vector<Mat> random_kraus(int d, int k, Rng& rng) {
  const Mat u = haar_unitary(d * k, rng);
  std::vector<Mat> out;
  for (int i = 0; i < k; ++i) out.push_back(u.block(i * d, 0, d, d));
  return out;
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// Asymptotic Kolmogorov survival function with the Stephens small-n correction.
inline double ks_p_value(double d, double n) {
  const double sn = std::sqrt(n);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// One-sample KS distance against N(0, 1).
inline double ks_distance_normal(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = normal_cdf(xs[i]);
    d = std::max({d, (static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace oracle
