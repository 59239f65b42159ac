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

#include "qproc/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "qproc/errors.hpp"

namespace qproc::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line_no << ": " << what;
  throw ParseError(msg.str());
}

double to_real(std::string_view s, int line_no, const char* field) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail(line_no, std::string("bad ") + field + " '" + std::string(s) + "'");
  }
  return v;
}

std::int64_t to_int(std::string_view s, int line_no, const char* field) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    // Accept integral values written in floating notation, e.g. "1e5".
    const double d = to_real(s, line_no, field);
    if (d != std::floor(d) || std::abs(d) > 9e18) {
      fail(line_no, std::string("non-integer ") + field + " '" + std::string(s) + "'");
    }
    return static_cast<std::int64_t>(d);
  }
  return v;
}

struct Row {
  int input;
  int output;
  std::int64_t counts;
  double tau;
  int line_no;
};

// Key for grouping: wavelengths compare exactly; "none" sorts first.
using GroupKey = std::pair<bool, double>;

ScanDataset assemble(std::map<GroupKey, std::vector<Row>>& groups, bool noise) {
  ScanDataset scan;
  for (auto& [key, rows] : groups) {
    std::set<int> inputs;
    std::set<int> outputs;
    for (const auto& r : rows) {
      inputs.insert(r.input);
      outputs.insert(r.output);
    }
    TomographyDataset d;
    if (key.first) d.wavelength_nm = key.second;
    d.input_labels.assign(inputs.begin(), inputs.end());
    d.output_labels.assign(outputs.begin(), outputs.end());
    d.counts = CountMatrix::Constant(static_cast<Eigen::Index>(inputs.size()),
                                     static_cast<Eigen::Index>(outputs.size()), -1);
    d.integration_s = rows.front().tau;
    for (const auto& r : rows) {
      const auto l = std::distance(inputs.begin(), inputs.find(r.input));
      const auto j = std::distance(outputs.begin(), outputs.find(r.output));
      if (d.counts(l, j) != -1) fail(r.line_no, "duplicate (input, output) row");
      if (r.tau != d.integration_s) fail(r.line_no, "integration time differs within a wavelength");
      if (r.counts < 0) fail(r.line_no, "negative counts");
      d.counts(l, j) = r.counts;
    }
    if (d.counts.minCoeff() < 0) {
      std::ostringstream msg;
      msg << (noise ? "noise" : "process") << " dataset";
      if (d.wavelength_nm) msg << " at " << *d.wavelength_nm << " nm";
      msg << " is missing (input, output) combinations";
      throw ParseError(msg.str());
    }
    d.validate();
    scan.items.push_back(std::move(d));
  }
  scan.canonicalize();
  return scan;
}

ScanDataset read_csv(std::istream& in, bool noise) {
  const std::string expected = noise ? kNoiseCsvHeader : kProcessCsvHeader;
  const std::size_t fields = noise ? 4 : 5;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::map<GroupKey, std::vector<Row>> groups;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!have_header) {
      if (view != expected) fail(line_no, "expected header '" + expected + "'");
      have_header = true;
      continue;
    }
    const auto cols = split(view);
    if (cols.size() != fields) fail(line_no, "wrong number of fields");
    GroupKey key{false, 0.0};
    if (!cols[0].empty()) key = {true, to_real(cols[0], line_no, "wavelength_nm")};
    Row r{};
    r.line_no = line_no;
    std::size_t c = 1;
    r.input = noise ? kNoPreparation : static_cast<int>(to_int(cols[c++], line_no, "input_idx"));
    r.output = static_cast<int>(to_int(cols[c++], line_no, "output_idx"));
    r.counts = to_int(cols[c++], line_no, "counts");
    r.tau = to_real(cols[c++], line_no, "integration_s");
    if (!(r.tau > 0.0)) fail(line_no, "integration_s must be positive");
    groups[key].push_back(r);
  }
  if (!have_header) throw ParseError("missing header '" + expected + "'");
  return assemble(groups, noise);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string());
  return out;
}

std::string wavelength_field(const TomographyDataset& d) {
  return d.wavelength_nm ? format_real(*d.wavelength_nm) : std::string();
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

ScanDataset read_process_csv(std::istream& in) {
  return read_csv(in, false);
}

ScanDataset read_process_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_process_csv(in);
}

ScanDataset read_noise_csv(std::istream& in) {
  return read_csv(in, true);
}

ScanDataset read_noise_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_noise_csv(in);
}

void write_process_csv(std::ostream& out, const ScanDataset& scan) {
  out << kProcessCsvHeader << '\n';
  for (const auto& d : scan.items) {
    const std::string wl = wavelength_field(d);
    const std::string tau = format_real(d.integration_s);
    for (int l = 0; l < d.num_inputs(); ++l) {
      for (int j = 0; j < d.num_outputs(); ++j) {
        out << wl << ',' << d.input_labels[static_cast<std::size_t>(l)] << ','
            << d.output_labels[static_cast<std::size_t>(j)] << ',' << d.counts(l, j) << ','
            << tau << '\n';
      }
    }
  }
}

void write_process_csv(const std::filesystem::path& path, const ScanDataset& scan) {
  auto out = open_out(path);
  write_process_csv(out, scan);
}

void write_noise_csv(std::ostream& out, const ScanDataset& scan) {
  out << kNoiseCsvHeader << '\n';
  for (const auto& d : scan.items) {
    if (d.num_inputs() != 1) throw InvalidCounts("noise dataset must have a single input row");
    const std::string wl = wavelength_field(d);
    const std::string tau = format_real(d.integration_s);
    for (int j = 0; j < d.num_outputs(); ++j) {
      out << wl << ',' << d.output_labels[static_cast<std::size_t>(j)] << ',' << d.counts(0, j)
          << ',' << tau << '\n';
    }
  }
}

void write_noise_csv(const std::filesystem::path& path, const ScanDataset& scan) {
  auto out = open_out(path);
  write_noise_csv(out, scan);
}

}  // namespace qproc::io
