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

#include "qproc/serialization.hpp"

#include <fstream>

#include "qproc/errors.hpp"

namespace qproc {

using nlohmann::json;

namespace {

json complex_to_json(Complex c) {
  return json::array({c.real(), c.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected a [re, im] pair, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  return guarded([&] {
    const json& rows = j.is_object() ? j.at("entries") : j;
    if (!rows.is_array() || rows.empty()) throw ParseError("matrix: expected non-empty row array");
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = static_cast<Eigen::Index>(rows[0].size());
    ComplexMatrix m(n_rows, n_cols);
    for (Eigen::Index r = 0; r < n_rows; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
        throw ParseError("matrix: ragged rows");
      }
      for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    if (j.is_object() && j.contains("dim") && j.at("dim").get<Eigen::Index>() != n_rows) {
      throw ParseError("matrix: 'dim' disagrees with entries");
    }
    return m;
  });
}

json kraus_to_json(const KrausSet& channel) {
  json ops = json::array();
  for (const auto& a : channel.operators()) ops.push_back(matrix_to_json(a)["entries"]);
  return json{{"dim", channel.dim()}, {"K", channel.choi_rank()}, {"operators", std::move(ops)}};
}

KrausSet kraus_from_json(const json& j) {
  return guarded([&] {
    std::vector<ComplexMatrix> ops;
    for (const auto& op : j.at("operators")) ops.push_back(matrix_from_json(op));
    if (j.contains("K") && j.at("K").get<std::size_t>() != ops.size()) {
      throw ParseError("kraus: 'K' disagrees with operator count");
    }
    KrausSet set(std::move(ops));
    if (j.contains("dim") && j.at("dim").get<int>() != set.dim()) {
      throw ParseError("kraus: 'dim' disagrees with operators");
    }
    return set;
  });
}

json choi_to_json(const ChoiMatrix& choi) {
  json j = matrix_to_json(choi.matrix());
  j["dim"] = choi.dim();
  return j;
}

json state_set_to_json(const StateSet& set) {
  json states = json::array();
  for (const auto& s : set.states()) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) amps.push_back(complex_to_json(s.amplitudes()(i)));
    states.push_back(std::move(amps));
  }
  return json{{"states", std::move(states)}};
}

StateSet state_set_from_json(const json& j) {
  return guarded([&] {
    const json& states = j.is_object() ? j.at("states") : j;
    std::vector<PureState> out;
    for (const auto& amps : states) {
      ComplexVector v(static_cast<Eigen::Index>(amps.size()));
      for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
      out.emplace_back(std::move(v));
    }
    return StateSet(std::move(out));
  });
}

json chain_config_to_json(const ChainConfig& c) {
  json j{{"beta", c.beta},
         {"retained_samples", c.retained_samples},
         {"thinning", c.thinning},
         {"seed", c.seed},
         {"target_acceptance", c.target_acceptance},
         {"adapt_beta", c.adapt_beta}};
  j["burn_in"] = c.burn_in ? json(*c.burn_in) : json(nullptr);
  return j;
}

ChainConfig chain_config_from_json(const json& j) {
  return guarded([&] {
    ChainConfig c;
    c.beta = j.at("beta").get<double>();
    c.retained_samples = j.at("retained_samples").get<int>();
    c.thinning = j.at("thinning").get<std::int64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.target_acceptance = j.value("target_acceptance", 0.234);
    c.adapt_beta = j.value("adapt_beta", true);
    if (j.contains("burn_in") && !j.at("burn_in").is_null()) c.burn_in = j.at("burn_in").get<std::int64_t>();
    return c;
  });
}

json posterior_to_json(const PosteriorSamples& posterior, std::optional<double> wavelength_nm) {
  json samples = json::array();
  for (int s = 0; s < posterior.size(); ++s) {
    const ChannelParams p = posterior.params(s);
    json y = json::array();
    for (const auto& v : p.y) y.push_back(complex_to_json(v));
    samples.push_back(json{{"y", std::move(y)}, {"z", p.z}});
  }
  json j{{"config", chain_config_to_json(posterior.config())},
         {"acceptance_rate", posterior.acceptance_rate()},
         {"final_beta", posterior.chain().final_beta},
         {"dim", posterior.dim()},
         {"K", posterior.choi_rank()},
         {"reference_flux", posterior.reference_flux()},
         {"log_flux_scale", posterior.log_flux_scale()},
         {"samples", std::move(samples)}};
  j["wavelength_nm"] = wavelength_nm ? json(*wavelength_nm) : json(nullptr);
  return j;
}

LoadedPosterior posterior_from_json(const json& j) {
  return guarded([&] {
    const int dim = j.at("dim").get<int>();
    const int k = j.at("K").get<int>();
    const json& samples = j.at("samples");
    const auto width = static_cast<Eigen::Index>(2 * k * dim * dim + 1);
    ChainResult chain;
    chain.samples.resize(static_cast<Eigen::Index>(samples.size()), width);
    chain.log_likelihoods = RealVector::Zero(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const json& y = samples[s].at("y");
      if (static_cast<Eigen::Index>(2 * y.size() + 1) != width) {
        throw ParseError("posterior: sample y has the wrong length");
      }
      const auto row = static_cast<Eigen::Index>(s);
      for (std::size_t i = 0; i < y.size(); ++i) {
        const Complex c = complex_from_json(y[i]);
        chain.samples(row, static_cast<Eigen::Index>(2 * i)) = c.real();
        chain.samples(row, static_cast<Eigen::Index>(2 * i + 1)) = c.imag();
      }
      chain.samples(row, width - 1) = samples[s].at("z").get<double>();
    }
    chain.acceptance_rate = j.at("acceptance_rate").get<double>();
    chain.final_beta = j.value("final_beta", 0.0);
    ChainConfig config = chain_config_from_json(j.at("config"));
    std::optional<double> wl;
    if (j.contains("wavelength_nm") && !j.at("wavelength_nm").is_null()) wl = j.at("wavelength_nm").get<double>();
    return LoadedPosterior{wl, PosteriorSamples(dim, k, config, std::move(chain),
                                                j.at("reference_flux").get<double>(),
                                                j.at("log_flux_scale").get<double>())};
  });
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  return matrix_from_json(read_json_file(path));
}

}  // namespace qproc
