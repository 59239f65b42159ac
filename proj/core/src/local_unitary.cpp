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
#include <numbers>
#include <random>

#include "qproc/errors.hpp"
#include "qproc/metrics.hpp"

namespace qproc {
namespace {

constexpr int kAngles = 6;
using Point = std::array<double, kAngles>;

// Downhill simplex minimization. Returns the best vertex and its value.
template <class F>
std::pair<Point, double> nelder_mead(F&& f, const Point& start, double scale, int max_evals,
                                     double tol) {
  constexpr int n = kAngles;
  std::array<Point, n + 1> simplex;
  std::array<double, n + 1> values;
  simplex[0] = start;
  for (int i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)] = start;
    simplex[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] += scale;
  }
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = f(simplex[i]);
    ++evals;
  }
  std::array<std::size_t, n + 1> order;
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second = order[n - 1];
    if (values[worst] - values[best] <= tol) break;

    Point centroid{};
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int c = 0; c < n; ++c) centroid[static_cast<std::size_t>(c)] += simplex[i][static_cast<std::size_t>(c)] / n;
    }
    auto along = [&](double t) {
      Point p;
      for (std::size_t c = 0; c < n; ++c) p[c] = centroid[c] + t * (simplex[worst][c] - centroid[c]);
      return p;
    };
    const Point reflected = along(-1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < values[best]) {
      const Point expanded = along(-2.0);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
    } else {
      const bool outside = fr < values[worst];
      const Point contracted = along(outside ? -0.5 : 0.5);
      const double fc = f(contracted);
      ++evals;
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t c = 0; c < n; ++c) {
            simplex[i][c] = simplex[best][c] + 0.5 * (simplex[i][c] - simplex[best][c]);
          }
          values[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best]};
}

}  // namespace

ComplexMatrix zyz_unitary(double alpha, double beta, double gamma) {
  const Complex i(0.0, 1.0);
  auto rz = [&](double t) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = std::exp(-i * (t / 2.0));
    m(1, 1) = std::exp(i * (t / 2.0));
    return m;
  };
  ComplexMatrix ry(2, 2);
  ry << std::cos(beta / 2.0), -std::sin(beta / 2.0), std::sin(beta / 2.0), std::cos(beta / 2.0);
  return rz(alpha) * ry * rz(gamma);
}

ChoiMatrix rotated_model_choi(const KrausSet& model, const ComplexMatrix& pre,
                              const ComplexMatrix& post) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(model.operators().size());
  for (const auto& a : model.operators()) ops.push_back(post * a * pre);
  return to_choi(KrausSet(std::move(ops)));
}

ModelFitResult max_fidelity_over_local_unitaries(const ChoiMatrix& measured,
                                                 const KrausSet& model,
                                                 const LocalUnitaryOptions& options) {
  if (measured.dim() != 2 || model.dim() != 2) {
    throw UnsupportedDimension("max_fidelity_over_local_unitaries: qubit channels only");
  }
  auto fidelity_at = [&](const Point& a) {
    const ComplexMatrix u = zyz_unitary(a[0], a[1], a[2]);
    const ComplexMatrix v = zyz_unitary(a[3], a[4], a[5]);
    return process_fidelity(measured, rotated_model_choi(model, u, v));
  };
  auto objective = [&](const Point& a) { return -fidelity_at(a); };

  ModelFitResult result;
  result.unrotated_fidelity = process_fidelity(measured, to_choi(model));

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Point best_point{};
  double best_value = objective(best_point);
  for (int s = 0; s < std::max(1, options.starts); ++s) {
    Point start{};
    if (s > 0) {
      for (auto& a : start) a = angle(rng);
    }
    auto [point, value] = nelder_mead(objective, start, 0.6, options.max_evaluations, options.tolerance);
    // Restart from the optimum with a small simplex to polish.
    auto [polished, polished_value] =
        nelder_mead(objective, point, 0.05, options.max_evaluations, options.tolerance);
    if (polished_value < value) {
      point = polished;
      value = polished_value;
    }
    if (value < best_value) {
      best_value = value;
      best_point = point;
    }
  }
  result.fidelity = std::max(-best_value, result.unrotated_fidelity);
  if (-best_value >= result.unrotated_fidelity) {
    result.pre_rotation = zyz_unitary(best_point[0], best_point[1], best_point[2]);
    result.post_rotation = zyz_unitary(best_point[3], best_point[4], best_point[5]);
  } else {
    result.pre_rotation = ComplexMatrix::Identity(2, 2);
    result.post_rotation = ComplexMatrix::Identity(2, 2);
  }
  return result;
}

}  // namespace qproc
