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

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qproc/channel_models.hpp"
#include "qproc/errors.hpp"
#include "qproc/metrics.hpp"
#include "qproc/serialization.hpp"
#include "qproc/tomography.hpp"

namespace qproc {
namespace {

MixingProbability mp(double p) { return MixingProbability(p); }

bool same_action(const KrausSet& a, const KrausSet& b, double tol) {
  return (to_choi(a).matrix() - to_choi(b).matrix()).norm() < tol;
}

TEST(MixingProbability, RejectsOutOfRange) {
  EXPECT_THROW(mp(-0.01), BadSpec);
  EXPECT_THROW(mp(1.01), BadSpec);
  EXPECT_NO_THROW(mp(0.0));
  EXPECT_NO_THROW(mp(1.0));
}

TEST(Models, EndpointOperatorLists) {
  EXPECT_EQ(bit_flip(mp(0)).choi_rank(), 1);
  EXPECT_LT((bit_flip(mp(1))[0] - pauli::x()).norm(), 1e-15);
  EXPECT_EQ(dephasing(mp(0)).choi_rank(), 1);
  EXPECT_EQ(depolarizing(mp(0)).choi_rank(), 1);
  EXPECT_EQ(depolarizing(mp(0.3)).choi_rank(), 4);
}

TEST(Models, TracePreservingExactly) {
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    for (auto f : {ModelFamily::kDepolarizing, ModelFamily::kDephasing, ModelFamily::kBitFlip}) {
      EXPECT_LT(make_model(f, mp(p)).trace_preserving_error(), 1e-15);
    }
  }
}

TEST(Models, BitFlipAction) {
  const DensityMatrix out = apply_channel(bit_flip(mp(0.3)), DensityMatrix::from_bloch(0, 0, 1));
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.7, 1e-15);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 0.3, 1e-15);
}

// Each model written out by its mixture formula on the six-state set.
TEST(Models, MatchMixtureFormulasOnStateSet) {
  const StateSet& states = default_state_set();
  for (double p : {0.0, 0.15, 0.5, 0.9, 1.0}) {
    for (int s = 0; s < states.size(); ++s) {
      const ComplexMatrix rho = states[s].projector();
      const ComplexMatrix x = pauli::x(), z = pauli::z();
      const ComplexMatrix bf = (1 - p) * rho + p * x * rho * x;
      const ComplexMatrix dp = (1 - p) * rho + p * z * rho * z;
      const ComplexMatrix dep = (1 - p) * rho + p * ComplexMatrix::Identity(2, 2) / 2.0;
      const DensityMatrix in(rho);
      EXPECT_LT((apply_channel(bit_flip(mp(p)), in).matrix() - bf).norm(), 1e-12);
      EXPECT_LT((apply_channel(dephasing(mp(p)), in).matrix() - dp).norm(), 1e-12);
      EXPECT_LT((apply_channel(depolarizing(mp(p)), in).matrix() - dep).norm(), 1e-12);
    }
  }
}

TEST(UnitaryChannel, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(unitary_channel(m), NotUnitary);
  EXPECT_EQ(unitary_channel(pauli::x()).choi_rank(), 1);
  EXPECT_NEAR(unitarity(unitary_channel(pauli::x())), 1.0, 1e-12);
}

TEST(UnitaryChannel, RandomUnitaryHasUnitUnitarity) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    EXPECT_NEAR(unitarity(unitary_channel(oracle::haar_unitary(2, rng))), 1.0, 1e-10);
  }
}

TEST(Compose, OrderAndIdentity) {
  std::mt19937_64 rng(47);
  const ComplexMatrix u = oracle::haar_unitary(2, rng);
  const ComplexMatrix v = oracle::haar_unitary(2, rng);
  EXPECT_TRUE(same_action(compose(unitary_channel(u), unitary_channel(v)), unitary_channel(v * u),
                          1e-12));
  const KrausSet ch = dephasing(mp(0.3));
  EXPECT_TRUE(same_action(compose(KrausSet::identity(2), ch), ch, 1e-15));
}

TEST(Compose, DepolarizingChannelsMultiply) {
  for (double p : {0.1, 0.4}) {
    for (double q : {0.2, 0.7}) {
      const KrausSet both = compose(depolarizing(mp(p)), depolarizing(mp(q)));
      EXPECT_EQ(both.choi_rank(), 16);
      EXPECT_TRUE(same_action(both, depolarizing(mp(p + q - p * q)), 1e-12));
    }
  }
}

TEST(Compose, Associative) {
  std::mt19937_64 rng(53);
  const KrausSet a(oracle::random_kraus(2, 2, rng));
  const KrausSet b(oracle::random_kraus(2, 3, rng));
  const KrausSet c(oracle::random_kraus(2, 2, rng));
  EXPECT_TRUE(same_action(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-12));
}

TEST(ModelSpec, ParsesFamiliesAndUnitaries) {
  const ModelSpec s = parse_model_spec("depolarizing:p=0.3");
  EXPECT_EQ(s.kind, ModelSpec::Kind::kFamily);
  EXPECT_EQ(s.family, ModelFamily::kDepolarizing);
  EXPECT_DOUBLE_EQ(s.p, 0.3);
  EXPECT_EQ(parse_model_spec("bitflip:p=0.05").family, ModelFamily::kBitFlip);
  EXPECT_EQ(parse_model_spec("dephasing:p=1").family, ModelFamily::kDephasing);
  const ModelSpec u = parse_model_spec("unitary:file=x.json");
  EXPECT_EQ(u.kind, ModelSpec::Kind::kUnitary);
  EXPECT_EQ(u.unitary_file, "x.json");
}

TEST(ModelSpec, ErrorsNameTheToken) {
  auto message = [](const char* text) {
    try {
      parse_model_spec(text);
    } catch (const BadSpec& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("warp:p=0.1").find("warp"), std::string::npos);
  EXPECT_NE(message("depolarizing:q=0.1").find("q"), std::string::npos);
  EXPECT_NE(message("depolarizing:p=abc").find("abc"), std::string::npos);
  EXPECT_NE(message("depolarizing:p=1.5").find("1.5"), std::string::npos);
  EXPECT_NE(message("depolarizing").find("depolarizing"), std::string::npos);
}

TEST(ModelSpec, BuildsUnitaryFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "qproc_unitary_spec.json";
  write_json_file(path, matrix_to_json(pauli::y()));
  const KrausSet k = build_model(parse_model_spec("unitary:file=" + path.string()));
  EXPECT_LT((k[0] - pauli::y()).norm(), 1e-15);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace qproc
