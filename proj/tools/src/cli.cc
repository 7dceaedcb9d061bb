// Copyright 2026 The dicke-rbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "config_json.hpp"
#include "dicke/compact_rbm.hpp"
#include "dicke/correlations.hpp"
#include "dicke/error.hpp"
#include "dicke/io.hpp"
#include "dicke/parallel.hpp"
#include "dicke/rbm.hpp"
#include "dicke/rf_analysis.hpp"
#include "dicke/state.hpp"
#include "dicke/tomography.hpp"

#ifndef DICKE_VERSION
#define DICKE_VERSION "unknown"
#endif

namespace dicke::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Inconsistent option combinations that CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t generate_seed() {
  std::random_device rd;
  const auto now = static_cast<std::uint64_t>(
      std::chrono::system_clock::now().time_since_epoch().count());
  return mix_seed((std::uint64_t{rd()} << 32) ^ rd(), now);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void finish(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json file_info(const std::string& path, std::string_view content) {
  return {{"path", path}, {"bytes", content.size()}, {"fnv1a64", fnv1a64(content)}};
}

std::string sibling_path(const std::string& path, const char* extension) {
  return std::filesystem::path(path).replace_extension(extension).string();
}

struct Run {
  std::ostream& out;
  std::ostream& err;
  Clock::time_point start = Clock::now();

  json metadata(const std::string& command, json config, json inputs,
                json results) const {
    const double wall =
        std::chrono::duration<double>(Clock::now() - start).count();
    return {{"command", command},
            {"version", DICKE_VERSION},
            {"config", std::move(config)},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"wall_time_s", wall},
            {"threads", max_threads()},
            {"build",
             {{"compiler", __VERSION__},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                            std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)}}}};
  }
};

SampleSet load_samples(const std::string& path, json& inputs) {
  const std::string text = read_file(path);
  inputs["samples"] = file_info(path, text);
  std::istringstream in(text);
  try {
    SampleSet s = read_samples(in);
    s.source = path;
    return s;
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

RbmParameters load_weights(const std::string& path, json& inputs) {
  const std::string text = read_file(path);
  inputs["weights"] = file_info(path, text);
  try {
    return parse_rbm_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<std::size_t> all_sectors(std::size_t n) {
  std::vector<std::size_t> d(n + 1);
  for (std::size_t i = 0; i <= n; ++i) d[i] = i;
  return d;
}

// sample ----------------------------------------------------------------

struct SampleArgs {
  std::size_t qubits = 0;
  std::size_t dicke = 0;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  std::string output;
  CLI::Option* seed_opt = nullptr;
};

void add_sample(CLI::App& app, SampleArgs& a) {
  auto* sub = app.add_subcommand("sample", "Draw computational-basis measurements of a Dicke state");
  sub->add_option("-n,--qubits", a.qubits, "Number of qubits N")->required();
  sub->add_option("-d,--dicke", a.dicke, "Excitation number D")->required();
  sub->add_option("--count", a.count, "Number of measurements")->capture_default_str();
  a.seed_opt = sub->add_option("--seed", a.seed, "RNG seed (generated and recorded when omitted)");
  sub->add_option("-o,--output", a.output, "Sample file")->required();
}

int run_sample(const Run& run, SampleArgs& a) {
  if (a.seed_opt->count() == 0) a.seed = generate_seed();
  const SampleSet s = sample_measurements(DickeState(a.qubits, a.dicke), a.count, a.seed);
  std::ofstream out = open_output(a.output);
  write_samples(out, s);
  finish(out, a.output);
  const json config = {{"qubits", a.qubits}, {"dicke", a.dicke}, {"count", a.count},
                       {"seed", a.seed},     {"output", a.output}};
  write_json_file(metadata_path(a.output),
                  run.metadata("sample", config, json::object(),
                               {{"samples", s.samples.size()}}));
  run.out << "wrote " << s.samples.size() << " samples to " << a.output
          << " (seed " << a.seed << ")\n";
  return kExitOk;
}

// train -----------------------------------------------------------------

struct TrainArgs {
  std::string samples;
  std::string output;
  std::string trace;
  std::string weights_csv;
  std::string weights_pgm;
  std::size_t hidden = 0;
  std::vector<std::size_t> target;
  std::string checkpoint = "fidelity";
  bool progress = false;
  TrainingConfig cfg;
  CLI::Option* seed_opt = nullptr;
};

void add_training_options(CLI::App* sub, TrainingConfig& cfg) {
  sub->add_option("--cd-steps", cfg.cd_steps, "Gibbs sweeps per CD update")->capture_default_str();
  sub->add_option("--lr", cfg.learning_rate, "Learning rate")->capture_default_str();
  sub->add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str();
  sub->add_option("--batch-size", cfg.batch_size, "Mini-batch size")->capture_default_str();
  sub->add_option("--init-scale", cfg.init_scale,
                  "Initial weights are uniform in [-s, s]")->capture_default_str();
}

void add_train(CLI::App& app, TrainArgs& a) {
  auto* sub = app.add_subcommand("train", "Fit an RBM to a sample file by contrastive divergence");
  sub->add_option("--samples", a.samples, "Sample file")->required();
  sub->add_option("-o,--output", a.output, "Weights JSON")->required();
  sub->add_option("--hidden", a.hidden, "Hidden units M (default N)");
  sub->add_option("--target", a.target, "Dicke target N D; enables the fidelity trace")
      ->expected(2);
  sub->add_option("--checkpoint", a.checkpoint, "Checkpoint metric")
      ->check(CLI::IsMember({"fidelity", "kl"}))
      ->capture_default_str();
  sub->add_option("--trace", a.trace, "Trace CSV (default <output>.trace.csv)");
  sub->add_option("--weights-csv", a.weights_csv, "Also write W as CSV");
  sub->add_option("--weights-pgm", a.weights_pgm, "Also write W as a PGM heatmap");
  sub->add_flag("--progress", a.progress, "Report epochs on stderr");
  add_training_options(sub, a.cfg);
  a.seed_opt = sub->add_option("--seed", a.cfg.seed, "RNG seed (generated and recorded when omitted)");
}

int run_train(const Run& run, TrainArgs& a) {
  if (a.seed_opt->count() == 0) a.cfg.seed = generate_seed();
  a.cfg.checkpoint_metric = checkpoint_metric_from_string(a.checkpoint);
  json inputs = json::object();
  const SampleSet data = load_samples(a.samples, inputs);
  const std::size_t hidden = a.hidden ? a.hidden : data.n_qubits;
  std::optional<DickeState> target;
  if (!a.target.empty()) {
    target.emplace(a.target[0], a.target[1]);
    if (target->n_qubits() != data.n_qubits) {
      throw DomainError("--target N=" + std::to_string(a.target[0]) +
                        " but the samples have N=" + std::to_string(data.n_qubits));
    }
  }
  if (a.trace.empty()) a.trace = sibling_path(a.output, ".trace.csv");

  EpochObserver observer;
  if (a.progress) {
    observer = [&](const EpochRecord& r) {
      if (r.epoch % 100 != 0 && r.epoch != a.cfg.epochs) return;
      run.err << "epoch " << r.epoch;
      if (r.fidelity) run.err << " fidelity " << *r.fidelity;
      if (r.kl) run.err << " kl " << *r.kl;
      run.err << '\n';
    };
  }
  const TomographyResult result = train_tomography(data, hidden, a.cfg, target, observer);
  const EpochRecord& best = result.trace.epochs[std::size_t(result.trace.best_epoch)];

  json summary = {{"best_epoch", result.trace.best_epoch},
                  {"checkpoint_metric", std::string(to_string(result.trace.metric))}};
  if (best.fidelity) summary["best_fidelity"] = *best.fidelity;
  if (best.kl) summary["best_kl"] = *best.kl;
  summary["rf_score"] = rf_score(result.parameters.weights).global_score;

  write_json_file(a.output, rbm_to_json(result.parameters,
                                        {{"training", training_config_to_json(a.cfg)},
                                         {"summary", summary}}));
  {
    std::ofstream out = open_output(a.trace);
    write_trace_csv(out, result.trace);
    finish(out, a.trace);
  }
  if (!a.weights_csv.empty()) {
    std::ofstream out = open_output(a.weights_csv);
    write_weight_csv(out, result.parameters.weights);
    finish(out, a.weights_csv);
  }
  if (!a.weights_pgm.empty()) {
    std::ofstream out = open_output(a.weights_pgm);
    write_weight_pgm(out, result.parameters.weights);
    finish(out, a.weights_pgm);
  }

  json config = {{"samples", a.samples},        {"output", a.output},
                 {"trace", a.trace},            {"hidden", hidden},
                 {"checkpoint", a.checkpoint},  {"cd-steps", a.cfg.cd_steps},
                 {"lr", a.cfg.learning_rate},   {"epochs", a.cfg.epochs},
                 {"batch-size", a.cfg.batch_size}, {"init-scale", a.cfg.init_scale},
                 {"seed", a.cfg.seed}};
  if (!a.target.empty()) config["target"] = a.target;
  if (!a.weights_csv.empty()) config["weights-csv"] = a.weights_csv;
  if (!a.weights_pgm.empty()) config["weights-pgm"] = a.weights_pgm;
  write_json_file(metadata_path(a.output), run.metadata("train", config, inputs, summary));

  run.out << "best epoch " << result.trace.best_epoch;
  if (best.fidelity) run.out << " fidelity " << format_double(*best.fidelity);
  if (best.kl) run.out << " kl " << format_double(*best.kl);
  run.out << '\n';
  return kExitOk;
}

// fidelity --------------------------------------------------------------

struct FidelityArgs {
  std::string weights;
  std::size_t qubits = 0;
  double w_min = 0.0;
  double w_max = 0.0;
  std::vector<std::size_t> dicke;
  std::string output;
  CLI::Option* weights_opt = nullptr;
  CLI::Option* qubits_opt = nullptr;
};

void add_fidelity(CLI::App& app, FidelityArgs& a) {
  auto* sub = app.add_subcommand(
      "fidelity", "Fidelity with Dicke states: exact for a weights file, analytic for a compact RBM");
  a.weights_opt = sub->add_option("--weights", a.weights, "Weights JSON");
  a.qubits_opt = sub->add_option("-n,--qubits", a.qubits, "Compact RBM size N");
  auto* wmin = sub->add_option("--w-min", a.w_min, "Compact RBM off-partner weight");
  auto* wmax = sub->add_option("--w-max", a.w_max, "Compact RBM partner weight");
  a.qubits_opt->needs(wmin)->needs(wmax)->excludes(a.weights_opt);
  sub->add_option("-d,--dicke", a.dicke, "Sectors to report (default all)");
  sub->add_option("-o,--output", a.output, "CSV output (default stdout)");
}

int run_fidelity(const Run& run, FidelityArgs& a) {
  std::vector<double> f;
  std::size_t n = 0;
  json inputs = json::object();
  if (a.weights_opt->count() > 0) {
    const RbmParameters rbm = load_weights(a.weights, inputs);
    n = rbm.n_visible();
    const double log_z = partition_function(rbm);
    for (std::size_t d = 0; d <= n; ++d) f.push_back(fidelity_exact(rbm, DickeState(n, d), log_z));
  } else if (a.qubits_opt->count() > 0) {
    n = a.qubits;
    f = sector_fidelities(CompactRbm(n, a.w_min, a.w_max));
  } else {
    throw UsageError("fidelity: give --weights, or --qubits with --w-min and --w-max");
  }
  const std::vector<std::size_t> ds = a.dicke.empty() ? all_sectors(n) : a.dicke;
  std::ostringstream csv;
  csv << "D,fidelity\n";
  for (std::size_t d : ds) {
    if (d > n) throw DomainError("fidelity: D=" + std::to_string(d) + " > N=" + std::to_string(n));
    csv << d << ',' << format_double(f[d]) << '\n';
  }
  if (a.output.empty()) {
    run.out << csv.str();
  } else {
    std::ofstream out = open_output(a.output);
    out << csv.str();
    finish(out, a.output);
  }
  return kExitOk;
}

// ursell ----------------------------------------------------------------

struct UrsellArgs {
  std::size_t qubits = 0;
  std::size_t dicke = 0;
  std::vector<std::size_t> orders = {1, 2, 3, 4};
  bool product = false;
  std::uint64_t audit_seed = 0;
  std::size_t audit_tuples = 10;
  std::string output;
  std::string summary;
};

void add_ursell(CLI::App& app, UrsellArgs& a) {
  auto* sub = app.add_subcommand("ursell", "Connected correlation functions of a Dicke state");
  sub->add_option("-n,--qubits", a.qubits, "Number of qubits N (at most 20)")->required();
  auto* d = sub->add_option("-d,--dicke", a.dicke, "Excitation number D");
  auto* p = sub->add_flag("--product", a.product,
                          "Use the product state |0...0> instead (connected terms of order 2 and up vanish)");
  d->excludes(p);
  sub->add_option("--order", a.orders, "Orders to evaluate (1-4)")->capture_default_str();
  sub->add_option("--audit-seed", a.audit_seed, "Seed for the site-symmetry audit")
      ->capture_default_str();
  sub->add_option("--audit-tuples", a.audit_tuples, "Random site tuples audited per order")
      ->capture_default_str();
  sub->add_option("-o,--output", a.output, "CSV output (default stdout)");
  sub->add_option("--summary", a.summary, "JSON summary of levels per order");
}

int run_ursell(const Run& run, UrsellArgs& a) {
  // |0...0> is the D = 0 Dicke state.
  const DickeState state(a.qubits, a.product ? 0 : a.dicke);
  std::ostringstream csv;
  csv << "order,label,sites,value\n";
  json summaries = json::array();
  for (std::size_t order : a.orders) {
    const CorrelationReport report =
        correlation_histogram(state, order, a.audit_seed, a.audit_tuples);
    std::ostringstream part;
    write_correlation_csv(part, report);
    const std::string text = part.str();
    csv << text.substr(text.find('\n') + 1);
    summaries.push_back(json::parse(correlation_summary_json(report)));
  }
  if (a.output.empty()) {
    run.out << csv.str();
  } else {
    std::ofstream out = open_output(a.output);
    out << csv.str();
    finish(out, a.output);
  }
  if (!a.summary.empty()) write_json_file(a.summary, summaries);
  return kExitOk;
}

// phase-diagram ---------------------------------------------------------

struct PhaseArgs {
  std::size_t qubits = 0;
  std::vector<double> w_min_range;
  std::vector<double> w_max_range;
  std::size_t resolution = 500;
  double w_min_step = 0.0;
  double w_max_step = 0.0;
  double threshold = kSectorThreshold;
  std::string output;
  std::string ppm;
};

void add_phase(CLI::App& app, PhaseArgs& a) {
  auto* sub = app.add_subcommand("phase-diagram",
                                 "Dicke-sector map of the compact RBM over (w_min, w_max)");
  sub->add_option("-n,--qubits", a.qubits, "Number of qubits N")->required();
  sub->add_option("--w-min-range", a.w_min_range, "w_min interval (default -10 -0.02)")
      ->expected(2);
  sub->add_option("--w-max-range", a.w_max_range, "w_max interval (default 10N/500 10N)")
      ->expected(2);
  sub->add_option("--resolution", a.resolution, "Points per axis")->capture_default_str();
  sub->add_option("--w-min-step", a.w_min_step, "w_min spacing (overrides --resolution)");
  sub->add_option("--w-max-step", a.w_max_step, "w_max spacing (overrides --resolution)");
  sub->add_option("--threshold", a.threshold, "Points with best F at or below this are in no sector")
      ->capture_default_str();
  sub->add_option("-o,--output", a.output, "CSV output, written row by row")->required();
  sub->add_option("--ppm", a.ppm, "Also render a PPM image");
}

AxisSpec make_axis(const std::vector<double>& range, double step, std::size_t resolution) {
  return step > 0.0 ? AxisSpec::from_step(range[0], range[1], step)
                    : AxisSpec::from_count(range[0], range[1], resolution);
}

int run_phase(const Run& run, PhaseArgs& a) {
  if (a.w_min_range.empty()) a.w_min_range = {-10.0, -0.02};
  if (a.w_max_range.empty()) {
    const double top = 10.0 * static_cast<double>(a.qubits);
    a.w_max_range = {top / 500.0, top};
  }
  const AxisSpec wmin = make_axis(a.w_min_range, a.w_min_step, a.resolution);
  const AxisSpec wmax = make_axis(a.w_max_range, a.w_max_step, a.resolution);

  std::ofstream out = open_output(a.output);
  write_phase_csv_header(out);
  std::vector<std::size_t> sector_points(a.qubits + 1, 0);
  std::size_t none = 0;
  std::size_t ties = 0;
  PhaseDiagramGrid grid;
  const bool keep = !a.ppm.empty();
  if (keep) {
    grid.n_qubits = a.qubits;
    grid.threshold = a.threshold;
    grid.w_min_axis = wmin;
    grid.w_max_axis = wmax;
  }
  phase_diagram_rows(a.qubits, wmin, wmax, a.threshold,
                     [&](std::size_t, std::span<const SectorPoint> row) {
                       write_phase_csv_rows(out, row);
                       for (const SectorPoint& p : row) {
                         if (p.best_d) {
                           ++sector_points[*p.best_d];
                         } else {
                           ++none;
                         }
                         ties += p.tie;
                       }
                       if (keep) grid.points.insert(grid.points.end(), row.begin(), row.end());
                     });
  finish(out, a.output);
  if (keep) {
    std::ofstream img = open_output(a.ppm);
    write_phase_ppm(img, grid);
    finish(img, a.ppm);
  }

  json sectors = json::object();
  for (std::size_t d = 0; d <= a.qubits; ++d) {
    if (sector_points[d]) sectors[std::to_string(d)] = sector_points[d];
  }
  json config = {{"qubits", a.qubits},         {"w-min-range", a.w_min_range},
                 {"w-max-range", a.w_max_range}, {"resolution", a.resolution},
                 {"threshold", a.threshold},   {"output", a.output}};
  if (a.w_min_step > 0.0) config["w-min-step"] = a.w_min_step;
  if (a.w_max_step > 0.0) config["w-max-step"] = a.w_max_step;
  if (keep) config["ppm"] = a.ppm;
  json meta = run.metadata("phase-diagram", config, json::object(),
                           {{"sector_points", sectors}, {"no_sector_points", none},
                            {"tie_points", ties}});
  meta["grid"] = phase_header_json(a.qubits, wmin, wmax, a.threshold);
  write_json_file(metadata_path(a.output), meta);
  run.out << "wrote " << wmin.count * wmax.count << " points to " << a.output << '\n';
  return kExitOk;
}

// path ------------------------------------------------------------------

struct PathArgs {
  std::size_t qubits = 0;
  std::vector<double> from;
  std::vector<double> to;
  std::size_t samples = 101;
  std::vector<std::size_t> dicke;
  std::string output;
};

void add_path(CLI::App& app, PathArgs& a) {
  auto* sub = app.add_subcommand("path", "Sector fidelities along a line in (w_min, w_max)");
  sub->add_option("-n,--qubits", a.qubits, "Number of qubits N")->required();
  sub->add_option("--from", a.from, "Start point w_min w_max")->expected(2)->required();
  sub->add_option("--to", a.to, "End point w_min w_max")->expected(2)->required();
  sub->add_option("--samples", a.samples, "Points along the path")->capture_default_str();
  sub->add_option("-d,--dicke", a.dicke, "Sectors to report (default all)");
  sub->add_option("-o,--output", a.output, "CSV output (default stdout)");
}

int run_path(const Run& run, PathArgs& a) {
  const std::vector<std::size_t> ds = a.dicke.empty() ? all_sectors(a.qubits) : a.dicke;
  const auto rows = fidelity_path(a.qubits, {a.from[0], a.from[1]}, {a.to[0], a.to[1]},
                                  a.samples, ds);
  if (a.output.empty()) {
    write_path_csv(run.out, rows, ds);
  } else {
    std::ofstream out = open_output(a.output);
    write_path_csv(out, rows, ds);
    finish(out, a.output);
  }
  return kExitOk;
}

// rf-report -------------------------------------------------------------

struct RfArgs {
  std::string weights;
  std::string output;
  std::string csv;
};

void add_rf(CLI::App& app, RfArgs& a) {
  auto* sub = app.add_subcommand("rf-report", "Global receptive-field analysis of a weights file");
  sub->add_option("--weights", a.weights, "Weights JSON")->required();
  sub->add_option("-o,--output", a.output, "JSON report (default stdout)");
  sub->add_option("--csv", a.csv, "Per-hidden-unit CSV");
}

int run_rf(const Run& run, RfArgs& a) {
  json inputs = json::object();
  const RbmParameters rbm = load_weights(a.weights, inputs);
  const RfReport report = rf_score(rbm.weights);
  std::optional<TemplateFit> fit;
  if (rbm.n_visible() == rbm.n_hidden()) fit = rf_template_fit(rbm.weights);
  const json j = rf_report_to_json(report, fit);
  if (a.output.empty()) {
    run.out << j.dump(2) << '\n';
  } else {
    write_json_file(a.output, j);
    run.out << "global score " << format_double(report.global_score) << ": "
            << j["verdict"].get<std::string>() << '\n';
  }
  if (!a.csv.empty()) {
    std::ofstream out = open_output(a.csv);
    write_rf_csv(out, report);
    finish(out, a.csv);
  }
  return kExitOk;
}

// scaling-study ---------------------------------------------------------

struct ScalingArgs {
  std::size_t qubits = 0;
  std::size_t dicke = 0;
  std::size_t count = 10000;
  std::vector<std::size_t> hidden;
  std::string output;
  TrainingConfig cfg;
  CLI::Option* seed_opt = nullptr;
};

void add_scaling(CLI::App& app, ScalingArgs& a) {
  auto* sub = app.add_subcommand("scaling-study",
                                 "Best fidelity as a function of the number of hidden units");
  sub->add_option("-n,--qubits", a.qubits, "Number of qubits N")->required();
  sub->add_option("-d,--dicke", a.dicke, "Excitation number D")->required();
  sub->add_option("--count", a.count, "Training samples")->capture_default_str();
  sub->add_option("--hidden", a.hidden, "Hidden-unit counts (default 1, 2, 4, ... up to N)");
  sub->add_option("-o,--output", a.output, "CSV output")->required();
  a.cfg.learning_rate = kScalingStudyLearningRate;
  add_training_options(sub, a.cfg);
  a.seed_opt = sub->add_option("--seed", a.cfg.seed, "RNG seed (generated and recorded when omitted)");
}

int run_scaling(const Run& run, ScalingArgs& a) {
  if (a.seed_opt->count() == 0) a.cfg.seed = generate_seed();
  if (a.hidden.empty()) {
    for (std::size_t m = 1; m < a.qubits; m *= 2) a.hidden.push_back(m);
    a.hidden.push_back(a.qubits);
  }
  const DickeState target(a.qubits, a.dicke);
  // Data and training draw from separate streams of the recorded seed.
  const SampleSet data = sample_measurements(target, a.count, mix_seed(a.cfg.seed, 0x5a));
  const auto rows = hidden_unit_scaling_study(data, target, a.hidden, a.cfg);
  std::ofstream out = open_output(a.output);
  out << "n_hidden,best_fidelity,best_epoch\n";
  for (const ScalingRow& r : rows) {
    out << r.n_hidden << ',' << format_double(r.best_fidelity) << ',' << r.best_epoch << '\n';
  }
  finish(out, a.output);
  const json config = {{"qubits", a.qubits},        {"dicke", a.dicke},
                       {"count", a.count},          {"hidden", a.hidden},
                       {"output", a.output},        {"cd-steps", a.cfg.cd_steps},
                       {"lr", a.cfg.learning_rate}, {"epochs", a.cfg.epochs},
                       {"batch-size", a.cfg.batch_size}, {"init-scale", a.cfg.init_scale},
                       {"seed", a.cfg.seed}};
  write_json_file(metadata_path(a.output),
                  run.metadata("scaling-study", config, json::object(), {{"rows", rows.size()}}));
  return kExitOk;
}

}  // namespace

std::string metadata_path(const std::string& path) {
  return sibling_path(path, ".meta.json");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dicke states as restricted Boltzmann machine quantum states", "dicke-rbm"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<ConfigJson>());
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");
  app.set_version_flag("--version", DICKE_VERSION);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = all cores)")->capture_default_str();
  app.require_subcommand(1);

  SampleArgs sample;
  TrainArgs train;
  FidelityArgs fidelity;
  UrsellArgs ursell_args;
  PhaseArgs phase;
  PathArgs path;
  RfArgs rf;
  ScalingArgs scaling;
  add_sample(app, sample);
  add_train(app, train);
  add_fidelity(app, fidelity);
  add_ursell(app, ursell_args);
  add_phase(app, phase);
  add_path(app, path);
  add_rf(app, rf);
  add_scaling(app, scaling);

  const Run run{out, err};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    set_max_threads(threads);

    if (app.got_subcommand("sample")) return run_sample(run, sample);
    if (app.got_subcommand("train")) return run_train(run, train);
    if (app.got_subcommand("fidelity")) return run_fidelity(run, fidelity);
    if (app.got_subcommand("ursell")) return run_ursell(run, ursell_args);
    if (app.got_subcommand("phase-diagram")) return run_phase(run, phase);
    if (app.got_subcommand("path")) return run_path(run, path);
    if (app.got_subcommand("rf-report")) return run_rf(run, rf);
    if (app.got_subcommand("scaling-study")) return run_scaling(run, scaling);
    return kExitUsage;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::FileError& e) {
    app.exit(e, out, err);
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const TrainingError& e) {
    err << "training error: " << e.what() << '\n';
    return kExitTraining;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dicke::cli
