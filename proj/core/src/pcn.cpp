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

#include "qproc/pcn.hpp"

#include <sstream>

#include "qproc/errors.hpp"

namespace qproc {

std::int64_t ChainConfig::effective_burn_in() const {
  if (burn_in) return *burn_in;
  return static_cast<std::int64_t>(retained_samples) * thinning / 10;
}

void ChainConfig::validate() const {
  std::ostringstream msg;
  if (!(beta > 0.0 && beta <= 1.0)) msg << "beta must be in (0, 1]; ";
  if (retained_samples < 2) msg << "retained samples R must be >= 2; ";
  if (thinning < 1) msg << "thinning T must be >= 1; ";
  if (burn_in && *burn_in < 0) msg << "burn-in must be non-negative; ";
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
    msg << "target acceptance must be in (0, 1); ";
  }
  const std::string err = msg.str();
  if (!err.empty()) throw BadSpec("chain config: " + err.substr(0, err.size() - 2));
}

Summary posterior_summary(std::span<const double> values) {
  if (values.size() < 2) throw EmptyData("posterior_summary needs at least two samples");
  // Fixed-order two-pass summation.
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

bool summaries_agree(const ConvergencePoint& coarse, const ConvergencePoint& fine, int retained,
                     const ConvergenceOptions& options) {
  const double r = static_cast<double>(retained);
  const double s1 = coarse.metric.std;
  const double s2 = fine.metric.std;
  const double mean_se = std::sqrt((s1 * s1 + s2 * s2) / r);
  const double std_se = std::sqrt((s1 * s1 + s2 * s2) / (2.0 * r));
  const double mean_tol = std::max(options.mean_tolerance, options.standard_errors * mean_se);
  const double std_tol = std::max(options.std_tolerance, options.standard_errors * std_se);
  return std::abs(coarse.metric.mean - fine.metric.mean) <= mean_tol &&
         std::abs(coarse.metric.std - fine.metric.std) <= std_tol;
}

ConvergenceTrace convergence_doubling(
    const std::function<ConvergencePoint(std::int64_t thinning)>& run_at, int retained,
    const ConvergenceOptions& options) {
  if (options.min_thinning < 1 || options.max_thinning < options.min_thinning) {
    throw BadSpec("convergence_doubling: invalid thinning range");
  }
  ConvergenceTrace trace;
  for (std::int64_t t = options.min_thinning; t <= options.max_thinning; t *= 2) {
    ConvergencePoint point = run_at(t);
    point.thinning = t;
    trace.points.push_back(point);
    const std::size_t n = trace.points.size();
    if (n >= 3 &&
        summaries_agree(trace.points[n - 3], trace.points[n - 2], retained, options) &&
        summaries_agree(trace.points[n - 2], trace.points[n - 1], retained, options)) {
      trace.chosen_thinning = trace.points[n - 3].thinning;
      trace.converged = true;
      return trace;
    }
  }
  trace.chosen_thinning = trace.points.back().thinning;
  trace.converged = false;
  return trace;
}

}  // namespace qproc
