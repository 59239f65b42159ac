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

#include "qproc/channel_models.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "qproc/errors.hpp"
#include "qproc/serialization.hpp"

namespace qproc {

MixingProbability::MixingProbability(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "mixing probability " << p << " outside [0, 1]";
    throw BadSpec(msg.str());
  }
}

namespace {

KrausSet two_operator_model(double p, const ComplexMatrix& flip) {
  std::vector<ComplexMatrix> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * pauli::identity());
  if (p > 0.0) ops.push_back(std::sqrt(p) * flip);
  return KrausSet(std::move(ops));
}

double parse_double(std::string_view token, std::string_view context) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw BadSpec("cannot parse number '" + std::string(token) + "' in '" +
                  std::string(context) + "'");
  }
  return value;
}

}  // namespace

KrausSet bit_flip(MixingProbability p) {
  return two_operator_model(p.value(), pauli::x());
}

KrausSet dephasing(MixingProbability p) {
  return two_operator_model(p.value(), pauli::z());
}

KrausSet depolarizing(MixingProbability p) {
  const double q = p.value();
  if (q == 0.0) return KrausSet::identity(2);
  const double w = std::sqrt(q / 4.0);
  return KrausSet({std::sqrt(1.0 - 3.0 * q / 4.0) * pauli::identity(), w * pauli::x(),
                   w * pauli::y(), w * pauli::z()});
}

KrausSet unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw NotUnitary("unitary_channel: not square");
  const double err = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
  if (!(err <= 1e-10)) {
    std::ostringstream msg;
    msg << "unitary_channel: ||U^dag U - I||_F = " << err;
    throw NotUnitary(msg.str());
  }
  return KrausSet({u});
}

KrausSet compose(const KrausSet& first, const KrausSet& second) {
  if (first.dim() != second.dim()) {
    throw DimensionMismatch("compose: channels act on different dimensions");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.operators().size() * second.operators().size());
  for (const auto& b : second.operators()) {
    for (const auto& a : first.operators()) ops.push_back(b * a);
  }
  return KrausSet(std::move(ops));
}

KrausSet make_model(ModelFamily family, MixingProbability p) {
  switch (family) {
    case ModelFamily::kDepolarizing: return depolarizing(p);
    case ModelFamily::kDephasing: return dephasing(p);
    case ModelFamily::kBitFlip: return bit_flip(p);
  }
  throw BadSpec("unknown model family");
}

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::kDepolarizing: return "depolarizing";
    case ModelFamily::kDephasing: return "dephasing";
    case ModelFamily::kBitFlip: return "bitflip";
  }
  return "unknown";
}

ModelFamily parse_model_family(std::string_view name) {
  if (name == "depolarizing") return ModelFamily::kDepolarizing;
  if (name == "dephasing") return ModelFamily::kDephasing;
  if (name == "bitflip" || name == "bit_flip" || name == "bit-flip") return ModelFamily::kBitFlip;
  throw BadSpec("unknown model '" + std::string(name) + "'");
}

ModelSpec parse_model_spec(std::string_view text) {
  ModelSpec spec;
  spec.text = std::string(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw BadSpec("model spec '" + std::string(text) + "' lacks ':' (expected name:key=value)");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string_view arg = text.substr(colon + 1);
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos) {
    throw BadSpec("model argument '" + std::string(arg) + "' lacks '='");
  }
  const std::string_view key = arg.substr(0, eq);
  const std::string_view value = arg.substr(eq + 1);

  if (name == "unitary") {
    if (key != "file") throw BadSpec("unitary model expects 'file=', got '" + std::string(key) + "'");
    if (value.empty()) throw BadSpec("unitary model: empty file path");
    spec.kind = ModelSpec::Kind::kUnitary;
    spec.unitary_file = std::string(value);
    return spec;
  }
  spec.kind = ModelSpec::Kind::kFamily;
  spec.family = parse_model_family(name);
  if (key != "p") throw BadSpec("model '" + std::string(name) + "' expects 'p=', got '" + std::string(key) + "'");
  spec.p = parse_double(value, text);
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw BadSpec("model spec '" + spec.text + "': p=" + std::string(value) + " outside [0, 1]");
  }
  return spec;
}

KrausSet build_model(const ModelSpec& spec) {
  if (spec.kind == ModelSpec::Kind::kUnitary) {
    return unitary_channel(read_matrix_file(spec.unitary_file));
  }
  return make_model(spec.family, MixingProbability(spec.p));
}

}  // namespace qproc
