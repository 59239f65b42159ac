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

#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "qproc/channel_models.hpp"
#include "qproc/dataset_io.hpp"
#include "qproc/errors.hpp"

namespace qproc {
namespace {

ScanDataset make_scan() {
  ScanDataset scan;
  int seed = 0;
  for (double wl : {1555.0, 1555.1234567890123, 1560.0}) {
    auto d = simulate_counts(dephasing(MixingProbability(0.1)), 1e5, 0.1 + 1.0 / 3.0,
                             SimulationMode::kPoisson, static_cast<std::uint64_t>(++seed));
    d.wavelength_nm = wl;
    scan.items.push_back(d);
  }
  return scan;
}

TEST(FormatReal, RoundTripsExactly) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(std::stod(io::format_real(v)), v);
  }
  EXPECT_EQ(std::stod(io::format_real(0.1)), 0.1);
  EXPECT_EQ(std::stod(io::format_real(std::numeric_limits<double>::min())),
            std::numeric_limits<double>::min());
}

TEST(ProcessCsv, RoundTrip) {
  const ScanDataset scan = make_scan();
  std::stringstream buffer;
  io::write_process_csv(buffer, scan);
  const ScanDataset back = io::read_process_csv(buffer);
  ASSERT_EQ(back.items.size(), scan.items.size());
  for (std::size_t i = 0; i < scan.items.size(); ++i) {
    EXPECT_EQ(back.items[i].counts, scan.items[i].counts);
    EXPECT_EQ(back.items[i].integration_s, scan.items[i].integration_s);
    EXPECT_EQ(*back.items[i].wavelength_nm, *scan.items[i].wavelength_nm);
    EXPECT_EQ(back.items[i].input_labels, scan.items[i].input_labels);
    EXPECT_EQ(back.items[i].output_labels, scan.items[i].output_labels);
  }
  // writing again gives the same bytes
  std::stringstream again;
  io::write_process_csv(again, back);
  std::stringstream first;
  io::write_process_csv(first, scan);
  EXPECT_EQ(again.str(), first.str());
}

TEST(ProcessCsv, AcceptsShuffledRowsAndComments) {
  std::stringstream in(
      "# comment\n"
      "wavelength_nm,input_idx,output_idx,counts,integration_s\n"
      "1556,1,0,5,1\n"
      "1556,0,1,6,1\n"
      "1556,0,0,7,1\n"
      "1556,1,1,8,1\n");
  const ScanDataset scan = io::read_process_csv(in);
  ASSERT_EQ(scan.items.size(), 1u);
  EXPECT_EQ(scan.items[0].counts(0, 0), 7);
  EXPECT_EQ(scan.items[0].counts(1, 0), 5);
}

TEST(ProcessCsv, ParseErrors) {
  const std::string header = "wavelength_nm,input_idx,output_idx,counts,integration_s\n";
  auto parse = [](const std::string& text) {
    std::stringstream in(text);
    return io::read_process_csv(in);
  };
  EXPECT_THROW(parse("bad,header\n1,0,0,1,1\n"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,abc,1\n"), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,1\n"), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,1.5,1\n"), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,-3,1\n"), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,1,0\n"), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,1,1\n1555,0,0,1,1\n"), ParseError);
  EXPECT_THROW(parse(header + "1555,0,0,1,1\n1555,1,1,1,1\n"), ParseError);  // incomplete grid
  EXPECT_THROW(parse(header + "1555,0,0,1,1\n1555,0,1,1,2\n"), ParseError);  // two taus
  EXPECT_NO_THROW(parse(header + "1555,0,0,1e5,1\n"));
  EXPECT_THROW(io::read_process_csv(std::filesystem::path("/nonexistent/x.csv")), ParseError);
}

TEST(ProcessCsv, HeaderOnlyIsEmptyScan) {
  std::stringstream in("wavelength_nm,input_idx,output_idx,counts,integration_s\n");
  EXPECT_TRUE(io::read_process_csv(in).items.empty());
}

TEST(NoiseCsv, RoundTrip) {
  ScanDataset scan;
  for (double wl : {1555.0, 1556.0}) {
    auto d = simulate_state_counts(DensityMatrix::maximally_mixed(2), 3e4, 1.0,
                                   SimulationMode::kPoisson, 9);
    d.wavelength_nm = wl;
    scan.items.push_back(d);
  }
  std::stringstream buffer;
  io::write_noise_csv(buffer, scan);
  EXPECT_EQ(buffer.str().substr(0, buffer.str().find('\n')), io::kNoiseCsvHeader);
  const ScanDataset back = io::read_noise_csv(buffer);
  ASSERT_EQ(back.items.size(), 2u);
  EXPECT_EQ(back.items[1].counts, scan.items[1].counts);
  EXPECT_EQ(back.items[1].input_labels, std::vector<int>{kNoPreparation});
}

TEST(NoiseCsv, RejectsProcessHeader) {
  std::stringstream in("wavelength_nm,input_idx,output_idx,counts,integration_s\n");
  EXPECT_THROW(io::read_noise_csv(in), ParseError);
}

}  // namespace
}  // namespace qproc
