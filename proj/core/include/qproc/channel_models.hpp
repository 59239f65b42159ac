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

#include <string>
#include <string_view>

#include "qproc/quantum.hpp"

namespace qproc {

/// Probability p_M in [0, 1] that a canonical noise model acts on the input.
class MixingProbability {
 public:
  /// Throws BadSpec outside [0, 1] or for NaN.
  explicit MixingProbability(double p);
  double value() const { return p_; }

 private:
  double p_;
};

/// {sqrt(1-p) I, sqrt(p) X}
KrausSet bit_flip(MixingProbability p);

/// {sqrt(1-p) I, sqrt(p) Z}
KrausSet dephasing(MixingProbability p);

/// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
KrausSet depolarizing(MixingProbability p);

/// {U}. Throws NotUnitary when ||U^dag U - I||_F > 1e-10.
KrausSet unitary_channel(const ComplexMatrix& u);

/// Channel `second` after `first`: operators {B_j A_k}. The result may hold
/// more than D^2 operators. Throws DimensionMismatch.
KrausSet compose(const KrausSet& first, const KrausSet& second);

enum class ModelFamily { kDepolarizing, kDephasing, kBitFlip };

KrausSet make_model(ModelFamily family, MixingProbability p);

std::string_view to_string(ModelFamily family);

/// Throws BadSpec for unknown names. Accepts "bitflip" and "bit_flip".
ModelFamily parse_model_family(std::string_view name);

/// Parsed CLI model spec: `depolarizing:p=0.3`, `dephasing:p=0.1`,
/// `bitflip:p=0.05` or `unitary:file=<path>`.
struct ModelSpec {
  enum class Kind { kFamily, kUnitary };
  Kind kind = Kind::kFamily;
  ModelFamily family = ModelFamily::kDepolarizing;
  double p = 0.0;
  std::string unitary_file;
  std::string text;
};

/// Throws BadSpec naming the offending token.
ModelSpec parse_model_spec(std::string_view text);

/// Materializes a spec. Unitary specs read a JSON matrix file (see
/// serialization.hpp).
KrausSet build_model(const ModelSpec& spec);

}  // namespace qproc
