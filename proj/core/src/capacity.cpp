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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "qproc/errors.hpp"
#include "qproc/metrics.hpp"

namespace qproc {
namespace {

using Bloch = Eigen::Vector3d;

// Eigenvalue floor for log2 in gradients; entropy itself uses 0 log 0 = 0.
constexpr double kLogFloor = 1e-300;

ComplexMatrix exchange_matrix(const KrausSet& channel, const ComplexMatrix& x) {
  const int k_count = channel.choi_rank();
  ComplexMatrix w(k_count, k_count);
  for (int mu = 0; mu < k_count; ++mu) {
    const ComplexMatrix ax = channel[static_cast<std::size_t>(mu)] * x;
    for (int nu = 0; nu < k_count; ++nu) {
      w(mu, nu) = (ax.array() * channel[static_cast<std::size_t>(nu)].array().conjugate()).sum();
    }
  }
  return w;
}

struct EntropyAndLog {
  double entropy = 0.0;
  ComplexMatrix log2_matrix;
};

EntropyAndLog entropy_with_log(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  const RealVector& lambda = solver.eigenvalues();
  RealVector logs(lambda.size());
  EntropyAndLog out;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double l = lambda(i);
    if (l > 0.0) out.entropy -= l * std::log2(l);
    logs(i) = std::log2(std::max(l, kLogFloor));
  }
  const ComplexMatrix& v = solver.eigenvectors();
  out.log2_matrix = v * logs.asDiagonal() * v.adjoint();
  return out;
}

// Coherent information over the Bloch ball with its analytic gradient. Both
// E and W are linear in rho, so their images of {I, X, Y, Z} are cached.
class CoherentInformationObjective {
 public:
  explicit CoherentInformationObjective(const KrausSet& channel) {
    const ComplexMatrix basis[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    for (int i = 0; i < 4; ++i) {
      out_[static_cast<std::size_t>(i)] = channel.apply(basis[i]);
      env_[static_cast<std::size_t>(i)] = exchange_matrix(channel, basis[i]);
    }
  }

  double value(const Bloch& r) const {
    return linalg::entropy_bits(output(r)) - linalg::entropy_bits(environment(r));
  }

  double value_and_gradient(const Bloch& r, Bloch& grad) const {
    const auto s_out = entropy_with_log(output(r));
    const auto s_env = entropy_with_log(environment(r));
    for (int i = 0; i < 3; ++i) {
      const auto idx = static_cast<std::size_t>(i + 1);
      const double d_out = -0.5 * (out_[idx] * s_out.log2_matrix).trace().real();
      const double d_env = -0.5 * (env_[idx] * s_env.log2_matrix).trace().real();
      grad(i) = d_out - d_env;
    }
    if (!grad.allFinite()) {
      // Finite-difference fallback.
      const double h = 1e-7;
      for (int i = 0; i < 3; ++i) {
        Bloch lo = r;
        Bloch hi = r;
        lo(i) -= h;
        hi(i) += h;
        grad(i) = (value(hi) - value(lo)) / (2.0 * h);
      }
    }
    return s_out.entropy - s_env.entropy;
  }

 private:
  ComplexMatrix combine(const std::array<ComplexMatrix, 4>& images, const Bloch& r) const {
    return 0.5 * (images[0] + r(0) * images[1] + r(1) * images[2] + r(2) * images[3]);
  }
  ComplexMatrix output(const Bloch& r) const { return combine(out_, r); }
  ComplexMatrix environment(const Bloch& r) const { return combine(env_, r); }

  std::array<ComplexMatrix, 4> out_;
  std::array<ComplexMatrix, 4> env_;
};

Bloch project_to_ball(const Bloch& r) {
  const double n = r.norm();
  return n > 1.0 ? Bloch(r / n) : r;
}

struct AscentResult {
  Bloch r = Bloch::Zero();
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentResult projected_gradient_ascent(const CoherentInformationObjective& f, Bloch r,
                                       const CapacityOptions& options) {
  AscentResult res;
  r = project_to_ball(r);
  Bloch grad;
  double value = f.value_and_gradient(r, grad);
  double step = 1.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    res.iterations = it + 1;
    const double stationarity = (project_to_ball(r + grad) - r).norm();
    // Backtracking line search along the projected arc.
    step = std::min(step * 2.0, 16.0);
    Bloch candidate = r;
    double candidate_value = value;
    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      candidate = project_to_ball(r + step * grad);
      candidate_value = f.value(candidate);
      if (candidate_value >= value + 1e-4 * grad.dot(candidate - r)) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      res.converged = stationarity < options.gradient_tolerance;
      break;
    }
    const double change = candidate_value - value;
    r = candidate;
    value = f.value_and_gradient(r, grad);
    const double new_stationarity = (project_to_ball(r + grad) - r).norm();
    if (std::abs(change) < options.objective_tolerance &&
        new_stationarity < options.gradient_tolerance) {
      res.converged = true;
      break;
    }
  }
  res.r = r;
  res.value = value;
  if (!res.converged) {
    res.converged = (project_to_ball(r + grad) - r).norm() < options.gradient_tolerance;
  }
  return res;
}

}  // namespace

CapacityResult channel_capacity(const KrausSet& channel, const CapacityOptions& options) {
  if (channel.dim() != 2) throw UnsupportedDimension("channel_capacity: qubit channels only");
  const CoherentInformationObjective objective(channel);

  std::vector<Bloch> starts = {Bloch(0, 0, 0), Bloch(0, 0, 1),  Bloch(0, 0, -1), Bloch(1, 0, 0),
                               Bloch(-1, 0, 0), Bloch(0, 1, 0), Bloch(0, -1, 0)};
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int i = 0; i < options.random_starts; ++i) {
    Bloch dir;
    for (int c = 0; c < 3; ++c) dir(c) = normal(rng);
    dir.normalize();
    starts.push_back(dir * std::cbrt(uniform(rng)));
  }

  CapacityResult result;
  AscentResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const AscentResult run = projected_gradient_ascent(objective, s, options);
    result.optimizer_iterations += run.iterations;
    if (run.value > best.value) best = run;
  }
  result.unclipped = best.value;
  result.clipped = best.value < 0.0;
  result.capacity = std::clamp(best.value, 0.0, 1.0);
  result.converged = best.converged;
  result.argmax_state = DensityMatrix::from_bloch(best.r(0), best.r(1), best.r(2));
  return result;
}

}  // namespace qproc
