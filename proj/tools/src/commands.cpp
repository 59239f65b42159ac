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

#include "qproc/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "manifest.hpp"
#include "parallel.hpp"
#include "qproc/qproc.hpp"

namespace qproc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kMinAcceptance = 0.05;
constexpr double kMaxAcceptance = 0.7;

std::string wavelength_field(std::optional<double> wl) {
  return wl ? io::format_real(*wl) : std::string();
}

json wavelength_json(std::optional<double> wl) {
  return wl ? json(*wl) : json(nullptr);
}

std::string posterior_name(std::optional<double> wl) {
  return wl ? "posterior_" + io::format_real(*wl) + ".json" : std::string("posterior.json");
}

std::string describe(std::optional<double> wl) {
  return wl ? io::format_real(*wl) + " nm" : std::string("(no wavelength)");
}

void prepare_out(const fs::path& out) {
  if (out.empty()) throw BadSpec("an output directory (--out) is required");
  fs::create_directories(out);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParseError("cannot write " + path.string());
  return f;
}

KrausSet compose_specs(const std::vector<std::string>& specs) {
  if (specs.empty()) throw BadSpec("at least one model spec is required");
  std::optional<KrausSet> channel;
  for (const auto& text : specs) {
    KrausSet next = build_model(parse_model_spec(text));
    channel = channel ? compose(*channel, next) : std::move(next);
  }
  return *channel;
}

SimulationMode parse_mode(const std::string& mode) {
  if (mode == "noiseless") return SimulationMode::kNoiseless;
  if (mode == "poisson") return SimulationMode::kPoisson;
  throw BadSpec("unknown mode '" + mode + "' (expected noiseless or poisson)");
}

void require_counts(const ScanDataset& scan, const char* what) {
  if (scan.items.empty()) throw EmptyData(std::string(what) + ": dataset has no rows");
  for (const auto& d : scan.items) {
    if (d.total_counts() == 0) {
      throw EmptyData(std::string(what) + ": no counts at " + describe(d.wavelength_nm));
    }
  }
}

std::vector<std::string> acceptance_warnings(const ChainResult& chain) {
  std::vector<std::string> out;
  if (chain.acceptance_rate < kMinAcceptance || chain.acceptance_rate > kMaxAcceptance) {
    std::ostringstream msg;
    msg << "acceptance rate " << chain.acceptance_rate << " outside [" << kMinAcceptance << ", "
        << kMaxAcceptance << "]";
    out.push_back(msg.str());
  }
  return out;
}

json summary_json(const Summary& s) {
  return json{{"mean", s.mean}, {"std", s.std}};
}

void write_metric_row(std::ostream& out, std::optional<double> wl, const char* metric,
                      const Summary& s) {
  out << wavelength_field(wl) << ',' << metric << ',' << io::format_real(s.mean) << ','
      << io::format_real(s.std) << '\n';
}

int finish(const std::vector<std::string>& warnings) {
  if (warnings.empty()) return kExitOk;
  for (const auto& w : warnings) spdlog::warn("{}", w);
  return kExitNotConverged;
}

// -----------------------------------------------------------------------------
// fit-process jobs

struct ProcessJob {
  std::optional<PosteriorSamples> posterior;
  std::vector<ChoiMatrix> chois;
  std::optional<ChoiMatrix> mean_choi;
  std::vector<double> unitarity;
  std::vector<double> capacity;
  std::vector<double> truth_fidelity;
  std::vector<double> relative_fidelity;
  double truth_mean_fidelity = 0.0;
  double relative_mean_fidelity = 1.0;
  std::vector<std::string> warnings;
};

std::vector<double> fidelities_to(const std::vector<ChoiMatrix>& chois, const ChoiMatrix& ref) {
  std::vector<double> out;
  out.reserve(chois.size());
  for (const auto& c : chois) out.push_back(process_fidelity(c, ref));
  return out;
}

// -----------------------------------------------------------------------------
// compare-models inputs

std::vector<LoadedPosterior> load_posteriors(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      const std::string name = entry.path().filename().string();
      if (name.starts_with("posterior") && name.ends_with(".json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<LoadedPosterior> out;
  for (const auto& f : files) out.push_back(posterior_from_json(read_json_file(f)));
  std::sort(out.begin(), out.end(), [](const LoadedPosterior& a, const LoadedPosterior& b) {
    return a.wavelength_nm < b.wavelength_nm;
  });
  return out;
}

const TomographyDataset& find_item(const ScanDataset& scan, std::optional<double> wl,
                                   const char* what) {
  for (const auto& d : scan.items) {
    if (d.wavelength_nm == wl) return d;
  }
  throw InvalidCounts(std::string("no ") + what + " data at " + describe(wl));
}

}  // namespace

// -----------------------------------------------------------------------------
// Shared pieces

bool Window::contains(std::optional<double> wavelength_nm) const {
  if (all) return true;
  return wavelength_nm && *wavelength_nm >= lo_nm && *wavelength_nm <= hi_nm;
}

Window parse_window(const std::string& text) {
  Window w;
  if (text == "all") {
    w.all = true;
    return w;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw BadSpec("window '" + text + "' must be lo:hi or all");
  auto number = [&](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw BadSpec("window '" + text + "': bad bound '" + std::string(s) + "'");
    }
    return v;
  };
  const std::string_view view(text);
  w.lo_nm = number(view.substr(0, colon));
  w.hi_nm = number(view.substr(colon + 1));
  if (!(w.lo_nm <= w.hi_nm)) throw BadSpec("window '" + text + "': lower bound exceeds upper");
  return w;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

ChainConfig ChainFlags::to_config(std::uint64_t seed) const {
  ChainConfig c;
  c.beta = beta;
  c.retained_samples = samples;
  c.thinning = thin;
  c.burn_in = burn_in;
  c.adapt_beta = adapt_beta;
  c.seed = seed;
  c.validate();
  return c;
}

// -----------------------------------------------------------------------------
// simulate

int cmd_simulate(const SimulateOptions& o) {
  const KrausSet channel = compose_specs(o.models);
  const SimulationMode mode = parse_mode(o.mode);
  std::vector<std::optional<double>> wavelengths;
  if (o.wavelengths_nm.empty()) {
    wavelengths.emplace_back();
  } else {
    std::vector<double> sorted = o.wavelengths_nm;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw BadSpec("--wavelengths contains duplicates");
    }
    wavelengths.assign(sorted.begin(), sorted.end());
  }
  prepare_out(o.out);

  ScanDataset scan;
  for (std::size_t i = 0; i < wavelengths.size(); ++i) {
    const std::uint64_t seed = derive_seed(o.seed, i);
    TomographyDataset d;
    if (o.noise) {
      const DensityMatrix input = DensityMatrix::maximally_mixed(channel.dim());
      d = simulate_state_counts(apply_channel(channel, input), o.counts, o.integration_s, mode,
                                seed);
    } else {
      d = simulate_counts(channel, o.counts, o.integration_s, mode, seed);
    }
    d.wavelength_nm = wavelengths[i];
    scan.items.push_back(std::move(d));
  }
  scan.canonicalize();

  const char* file = o.noise ? "noise.csv" : "process.csv";
  if (o.noise) {
    io::write_noise_csv(o.out / file, scan);
  } else {
    io::write_process_csv(o.out / file, scan);
  }
  spdlog::info("simulate: wrote {} dataset(s) to {}", scan.items.size(), (o.out / file).string());
  write_manifest(o.out, "simulate", to_json(o), {file});
  return kExitOk;
}

// -----------------------------------------------------------------------------
// fit-process

int cmd_fit_process(const FitProcessOptions& o) {
  const ScanDataset scan = io::read_process_csv(o.dataset);
  require_counts(scan, "fit-process");
  std::optional<ChoiMatrix> truth;
  if (o.truth) truth = to_choi(compose_specs({*o.truth}));
  static_cast<void>(o.chain.to_config(o.seed));
  prepare_out(o.out);

  const std::size_t n = scan.items.size();
  std::vector<ProcessJob> jobs(n);
  parallel_for(n, o.workers, [&](std::size_t i) {
    const TomographyDataset& data = scan.items[i];
    ProcessJob& job = jobs[i];
    spdlog::info("fit-process: chain for {}", describe(data.wavelength_nm));
    ProcessFitOptions fit;
    fit.choi_rank = o.choi_rank;
    job.posterior.emplace(run_chain(data, o.chain.to_config(derive_seed(o.seed, i)), fit));
    const PosteriorSamples& post = *job.posterior;
    job.warnings = acceptance_warnings(post.chain());
    job.chois = post.chois();
    job.mean_choi = ChoiMatrix::average(job.chois);
    for (int s = 0; s < post.size(); ++s) {
      const KrausSet channel = post.channel(s);
      job.unitarity.push_back(unitarity(channel));
      if (o.capacity) job.capacity.push_back(channel_capacity(channel).capacity);
    }
    if (truth) {
      job.truth_fidelity = fidelities_to(job.chois, *truth);
      job.truth_mean_fidelity = process_fidelity(*job.mean_choi, *truth);
    }
  });
  parallel_for(n, o.workers, [&](std::size_t i) {
    jobs[i].relative_fidelity = fidelities_to(jobs[i].chois, *jobs[0].mean_choi);
    jobs[i].relative_mean_fidelity =
        i == 0 ? 1.0 : process_fidelity(*jobs[i].mean_choi, *jobs[0].mean_choi);
  });

  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  auto samples_csv = open_out(o.out / "samples.csv");
  auto metrics_csv = open_out(o.out / "metrics.csv");
  samples_csv << "wavelength_nm,sample,unitarity,capacity_qubits,relative_fidelity";
  if (truth) samples_csv << ",fidelity_to_truth";
  samples_csv << '\n';
  metrics_csv << "wavelength_nm,metric,mean,std\n";
  json summary = json::array();

  for (std::size_t i = 0; i < n; ++i) {
    const auto wl = scan.items[i].wavelength_nm;
    const ProcessJob& job = jobs[i];
    const PosteriorSamples& post = *job.posterior;
    const std::string name = posterior_name(wl);
    write_json_file(o.out / name, posterior_to_json(post, wl));
    outputs.push_back(name);

    for (int s = 0; s < post.size(); ++s) {
      const auto k = static_cast<std::size_t>(s);
      samples_csv << wavelength_field(wl) << ',' << s << ',' << io::format_real(job.unitarity[k])
                  << ',' << (o.capacity ? io::format_real(job.capacity[k]) : std::string()) << ','
                  << io::format_real(job.relative_fidelity[k]);
      if (truth) samples_csv << ',' << io::format_real(job.truth_fidelity[k]);
      samples_csv << '\n';
    }

    json metrics;
    const Summary u = posterior_summary(job.unitarity);
    write_metric_row(metrics_csv, wl, "unitarity", u);
    metrics["unitarity"] = summary_json(u);
    if (o.capacity) {
      const Summary c = posterior_summary(job.capacity);
      write_metric_row(metrics_csv, wl, "capacity", c);
      metrics["capacity"] = summary_json(c);
    }
    const Summary rel{job.relative_mean_fidelity, posterior_summary(job.relative_fidelity).std};
    write_metric_row(metrics_csv, wl, "relative_fidelity", rel);
    metrics["relative_fidelity"] = summary_json(rel);
    if (truth) {
      const Summary tf{job.truth_mean_fidelity, posterior_summary(job.truth_fidelity).std};
      write_metric_row(metrics_csv, wl, "fidelity_to_truth", tf);
      metrics["fidelity_to_truth"] = summary_json(tf);
    }

    for (const auto& w : job.warnings) warnings.push_back(describe(wl) + ": " + w);
    summary.push_back(json{{"wavelength_nm", wavelength_json(wl)},
                           {"posterior", name},
                           {"acceptance_rate", post.acceptance_rate()},
                           {"final_beta", post.chain().final_beta},
                           {"burn_in_steps", post.chain().burn_in_steps},
                           {"sampling_steps", post.chain().sampling_steps},
                           {"mean_choi", choi_to_json(*job.mean_choi)},
                           {"metrics", std::move(metrics)},
                           {"warnings", job.warnings}});
  }
  write_json_file(o.out / "summary.json", json{{"wavelengths", std::move(summary)}});
  outputs.insert(outputs.end(), {"samples.csv", "metrics.csv", "summary.json"});
  write_manifest(o.out, "fit-process", to_json(o), outputs);
  return finish(warnings);
}

// -----------------------------------------------------------------------------
// fit-state

int cmd_fit_state(const FitStateOptions& o) {
  const ScanDataset scan = io::read_noise_csv(o.dataset);
  require_counts(scan, "fit-state");
  static_cast<void>(o.chain.to_config(o.seed));
  prepare_out(o.out);

  const std::size_t n = scan.items.size();
  std::vector<std::optional<QstResult>> results(n);
  parallel_for(n, o.workers, [&](std::size_t i) {
    spdlog::info("fit-state: chain for {}", describe(scan.items[i].wavelength_nm));
    results[i] = run_qst(scan.items[i], o.chain.to_config(derive_seed(o.seed, i)));
  });

  std::vector<std::string> warnings;
  auto samples_csv = open_out(o.out / "samples.csv");
  auto metrics_csv = open_out(o.out / "metrics.csv");
  samples_csv << "wavelength_nm,sample,purity\n";
  metrics_csv << "wavelength_nm,metric,mean,std\n";
  json states = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto wl = scan.items[i].wavelength_nm;
    const QstResult& r = *results[i];
    for (std::size_t s = 0; s < r.states.size(); ++s) {
      samples_csv << wavelength_field(wl) << ',' << s << ',' << io::format_real(purity(r.states[s]))
                  << '\n';
    }
    write_metric_row(metrics_csv, wl, "purity", r.purity);
    const auto w = acceptance_warnings(r.chain);
    for (const auto& msg : w) warnings.push_back(describe(wl) + ": " + msg);
    states.push_back(json{{"wavelength_nm", wavelength_json(wl)},
                          {"purity", summary_json(r.purity)},
                          {"mean_state", matrix_to_json(r.mean_state.matrix())},
                          {"acceptance_rate", r.chain.acceptance_rate},
                          {"final_beta", r.chain.final_beta},
                          {"warnings", w}});
  }
  write_json_file(o.out / "states.json", json{{"wavelengths", std::move(states)}});
  write_manifest(o.out, "fit-state", to_json(o), {"samples.csv", "metrics.csv", "states.json"});
  return finish(warnings);
}

// -----------------------------------------------------------------------------
// compare-models

int cmd_compare_models(const CompareModelsOptions& o) {
  const Window window = parse_window(o.window);
  if (o.models.empty()) throw BadSpec("compare-models: at least one model is required");
  std::vector<ModelFamily> families;
  for (const auto& m : o.models) families.push_back(parse_model_family(m));

  std::vector<LoadedPosterior> posteriors;
  for (auto& p : load_posteriors(o.posteriors)) {
    if (window.contains(p.wavelength_nm)) posteriors.push_back(std::move(p));
  }
  if (posteriors.empty()) throw WindowEmpty("compare-models: no posterior inside window " + o.window);
  const ScanDataset signal = io::read_process_csv(o.signal);
  const ScanDataset noise = io::read_noise_csv(o.noise);
  prepare_out(o.out);

  json per_wavelength = json::array();
  double p_sum = 0.0;
  double var_sum = 0.0;
  std::vector<ChoiMatrix> means;
  int samples = posteriors.front().posterior.size();
  for (const auto& p : posteriors) {
    const MixingEstimate m =
        mixing_probability_from_counts(find_item(signal, p.wavelength_nm, "signal-only"),
                                       find_item(noise, p.wavelength_nm, "noise-only"));
    p_sum += m.p_m;
    var_sum += m.std * m.std;
    per_wavelength.push_back(
        json{{"wavelength_nm", wavelength_json(p.wavelength_nm)}, {"p_M", m.p_m}, {"p_M_std", m.std}});
    means.push_back(p.posterior.mean_choi());
    samples = std::min(samples, p.posterior.size());
  }
  const double count = static_cast<double>(posteriors.size());
  const double p_m = std::clamp(p_sum / count, 0.0, 1.0);
  const double p_m_std = std::sqrt(var_sum) / count;
  const ChoiMatrix measured = ChoiMatrix::average(means);

  // Window-averaged Choi of each sample index, for error bars.
  std::vector<ChoiMatrix> sample_chois;
  sample_chois.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    std::vector<ChoiMatrix> at_s;
    for (const auto& p : posteriors) at_s.push_back(to_choi(p.posterior.channel(s)));
    sample_chois.push_back(ChoiMatrix::average(at_s));
  }

  LocalUnitaryOptions lu;
  lu.starts = o.starts;
  lu.seed = o.seed;
  json models = json::array();
  auto csv = open_out(o.out / "model_comparison.csv");
  csv << "model,p_m,p_m_std,fidelity,fidelity_std,unrotated_fidelity\n";
  for (ModelFamily family : families) {
    const KrausSet model = make_model(family, MixingProbability(p_m));
    ModelFitResult fit = max_fidelity_over_local_unitaries(measured, model, lu);
    const ChoiMatrix rotated = rotated_model_choi(model, fit.pre_rotation, fit.post_rotation);
    const double spread =
        samples >= 2 ? posterior_summary(fidelities_to(sample_chois, rotated)).std : 0.0;
    const std::string name(to_string(family));
    spdlog::info("compare-models: {} fidelity {:.6f}", name, fit.fidelity);
    csv << name << ',' << io::format_real(p_m) << ',' << io::format_real(p_m_std) << ','
        << io::format_real(fit.fidelity) << ',' << io::format_real(spread) << ','
        << io::format_real(fit.unrotated_fidelity) << '\n';
    models.push_back(json{{"model", name},
                          {"p_M", p_m},
                          {"p_M_std", p_m_std},
                          {"fidelity_mean", fit.fidelity},
                          {"fidelity_std", spread},
                          {"unrotated_fidelity", fit.unrotated_fidelity},
                          {"U_pre", matrix_to_json(fit.pre_rotation)},
                          {"V_post", matrix_to_json(fit.post_rotation)}});
  }
  json wavelengths = json::array();
  for (const auto& p : posteriors) wavelengths.push_back(wavelength_json(p.wavelength_nm));
  json report{{"window_nm", window.all ? json("all") : json::array({window.lo_nm, window.hi_nm})},
              {"wavelengths_nm", std::move(wavelengths)},
              {"p_M", p_m},
              {"p_M_std", p_m_std},
              {"per_wavelength", std::move(per_wavelength)},
              {"samples", samples},
              {"models", std::move(models)}};
  write_json_file(o.out / "model_comparison.json", report);
  write_manifest(o.out, "compare-models", to_json(o),
                 {"model_comparison.json", "model_comparison.csv"});
  return kExitOk;
}

// -----------------------------------------------------------------------------
// unitarity-curve

int cmd_unitarity_curve(const UnitarityCurveOptions& o) {
  if (o.models.empty()) throw BadSpec("unitarity-curve: at least one model is required");
  std::vector<double> grid = o.grid;
  if (grid.empty()) {
    if (o.points < 2) throw BadSpec("unitarity-curve: --points must be at least 2");
    for (int i = 0; i < o.points; ++i) grid.push_back(static_cast<double>(i) / (o.points - 1));
  }
  std::vector<ModelFamily> families;
  for (const auto& m : o.models) families.push_back(parse_model_family(m));
  prepare_out(o.out);

  auto csv = open_out(o.out / "unitarity_curve.csv");
  csv << "model,p_m,inunitarity\n";
  for (ModelFamily family : families) {
    for (const auto& point : inunitarity_curve(family, grid)) {
      csv << to_string(family) << ',' << io::format_real(point.p_m) << ','
          << io::format_real(point.inunitarity) << '\n';
    }
  }
  write_manifest(o.out, "unitarity-curve", to_json(o), {"unitarity_curve.csv"});
  return kExitOk;
}

// -----------------------------------------------------------------------------
// convergence-probe

int cmd_convergence_probe(const ConvergenceProbeOptions& o) {
  if (o.metric != "unitarity" && o.metric != "capacity") {
    throw BadSpec("unknown metric '" + o.metric + "' (expected unitarity or capacity)");
  }
  const ScanDataset scan = io::read_process_csv(o.dataset);
  require_counts(scan, "convergence-probe");
  static_cast<void>(o.chain.to_config(o.seed));
  ConvergenceOptions options;
  options.min_thinning = o.min_thin;
  options.max_thinning = o.max_thin;
  options.mean_tolerance = o.tolerance;
  options.std_tolerance = o.tolerance;
  if (options.min_thinning < 1 || options.max_thinning < options.min_thinning) {
    throw BadSpec("convergence-probe: need 1 <= --min-thin <= --max-thin");
  }
  prepare_out(o.out);

  const bool use_capacity = o.metric == "capacity";
  auto metric = [use_capacity](const PosteriorSamples& post, int s) {
    const KrausSet channel = post.channel(s);
    return use_capacity ? channel_capacity(channel).capacity : unitarity(channel);
  };
  const std::size_t n = scan.items.size();
  std::vector<ConvergenceTrace> traces(n);
  parallel_for(n, o.workers, [&](std::size_t i) {
    spdlog::info("convergence-probe: {}", describe(scan.items[i].wavelength_nm));
    traces[i] = convergence_doubling(scan.items[i], o.chain.to_config(derive_seed(o.seed, i)),
                                     metric, options);
  });

  std::vector<std::string> warnings;
  auto csv = open_out(o.out / "convergence.csv");
  csv << "wavelength_nm,thinning,mean,std,acceptance_rate\n";
  json report = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto wl = scan.items[i].wavelength_nm;
    for (const auto& p : traces[i].points) {
      csv << wavelength_field(wl) << ',' << p.thinning << ',' << io::format_real(p.metric.mean)
          << ',' << io::format_real(p.metric.std) << ',' << io::format_real(p.acceptance_rate)
          << '\n';
    }
    if (!traces[i].converged) {
      warnings.push_back(describe(wl) + ": no convergence up to thinning " +
                         std::to_string(o.max_thin));
    }
    report.push_back(json{{"wavelength_nm", wavelength_json(wl)},
                          {"chosen_thinning", traces[i].chosen_thinning},
                          {"converged", traces[i].converged}});
  }
  write_json_file(o.out / "convergence.json",
                  json{{"metric", o.metric}, {"wavelengths", std::move(report)}});
  write_manifest(o.out, "convergence-probe", to_json(o), {"convergence.csv", "convergence.json"});
  return finish(warnings);
}

}  // namespace qproc::cli
