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

#include "dicke/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dicke/error.hpp"

namespace dicke {
namespace {

using Eigen::Index;
using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const json& j, const char* field,
                                 std::size_t expected) {
  if (!j.is_array() || j.size() != expected) {
    throw ParseError(std::string("weights JSON: field '") + field +
                     "' must be an array of " + std::to_string(expected) +
                     " numbers");
  }
  Eigen::VectorXd v(static_cast<Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    if (!j[i].is_number()) {
      throw ParseError(std::string("weights JSON: non-numeric entry in '") +
                       field + "'");
    }
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

void check_stream(const std::ostream& out, const char* where) {
  if (!out) throw IoError(std::string(where) + ": stream write failed");
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json rbm_to_json(const RbmParameters& rbm, const json& metadata) {
  json w = json::array();
  for (Index i = 0; i < rbm.weights.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < rbm.weights.cols(); ++j) row.push_back(rbm.weights(i, j));
    w.push_back(std::move(row));
  }
  return json{{"n_visible", rbm.n_visible()},
              {"n_hidden", rbm.n_hidden()},
              {"W", std::move(w)},
              {"a", vector_to_json(rbm.visible_bias)},
              {"b", vector_to_json(rbm.hidden_bias)},
              {"metadata", metadata}};
}

RbmParameters rbm_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("weights JSON: top level must be an object");
  for (const char* key : {"n_visible", "n_hidden", "W", "a", "b"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("weights JSON: missing field '") + key + "'");
    }
  }
  if (!j["n_visible"].is_number_unsigned() || !j["n_hidden"].is_number_unsigned()) {
    throw ParseError("weights JSON: n_visible and n_hidden must be non-negative integers");
  }
  const auto n = j["n_visible"].get<std::size_t>();
  const auto m = j["n_hidden"].get<std::size_t>();
  const json& w = j["W"];
  if (!w.is_array() || w.size() != n) {
    throw ParseError("weights JSON: 'W' must have n_visible = " +
                     std::to_string(n) + " rows");
  }
  RbmParameters rbm(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd row = vector_from_json(w[i], "W", m);
    rbm.weights.row(static_cast<Index>(i)) = row.transpose();
  }
  rbm.visible_bias = vector_from_json(j["a"], "a", n);
  rbm.hidden_bias = vector_from_json(j["b"], "b", m);
  try {
    rbm.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("weights JSON: ") + e.what());
  }
  return rbm;
}

json parse_json_document(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    const std::size_t line_start = text.rfind('\n', limit == 0 ? 0 : limit - 1);
    const std::size_t from = line_start == std::string_view::npos ? 0 : line_start + 1;
    std::size_t to = text.find('\n', from);
    if (to == std::string_view::npos) to = text.size();
    throw ParseError(std::string(what) + ": JSON syntax error at line " +
                     std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + std::string(text.substr(from, to - from)));
  }
}

RbmParameters parse_rbm_json(std::string_view text) {
  return rbm_from_json(parse_json_document(text, "weights JSON"));
}

json training_config_to_json(const TrainingConfig& config) {
  return json{{"cd_steps", config.cd_steps},
              {"learning_rate", config.learning_rate},
              {"epochs", config.epochs},
              {"batch_size", config.batch_size},
              {"seed", config.seed},
              {"checkpoint_metric", std::string(to_string(config.checkpoint_metric))},
              {"init_scale", config.init_scale}};
}

void write_weight_csv(std::ostream& out, const Eigen::MatrixXd& weights) {
  for (Index i = 0; i < weights.rows(); ++i) {
    for (Index j = 0; j < weights.cols(); ++j) {
      if (j) out << ',';
      out << format_double(weights(i, j));
    }
    out << '\n';
  }
  check_stream(out, "write_weight_csv");
}

void write_weight_pgm(std::ostream& out, const Eigen::MatrixXd& weights) {
  if (weights.size() == 0) throw DomainError("write_weight_pgm: empty matrix");
  const double lo = weights.minCoeff();
  const double hi = weights.maxCoeff();
  const double span = hi - lo;
  out << "P2\n" << weights.cols() << ' ' << weights.rows() << "\n255\n";
  for (Index i = 0; i < weights.rows(); ++i) {
    for (Index j = 0; j < weights.cols(); ++j) {
      const int level =
          span > 0.0 ? static_cast<int>(std::lround(255.0 * (weights(i, j) - lo) / span))
                     : 0;
      if (j) out << ' ';
      out << level;
    }
    out << '\n';
  }
  check_stream(out, "write_weight_pgm");
}

void write_trace_csv(std::ostream& out, const TrainingTrace& trace) {
  out << "epoch,fidelity,nll,kl,best\n";
  for (const EpochRecord& r : trace.epochs) {
    out << r.epoch << ',' << (r.fidelity ? format_double(*r.fidelity) : "")
        << ',' << (r.nll ? format_double(*r.nll) : "") << ','
        << (r.kl ? format_double(*r.kl) : "") << ','
        << (r.epoch == trace.best_epoch ? 1 : 0) << '\n';
  }
  check_stream(out, "write_trace_csv");
}

json rf_report_to_json(const RfReport& report,
                       const std::optional<TemplateFit>& fit) {
  json units = json::array();
  for (std::size_t j = 0; j < report.units.size(); ++j) {
    const HiddenUnitField& u = report.units[j];
    units.push_back({{"hidden", j},
                     {"dominant_visible", u.dominant_visible},
                     {"dominant_weight", u.dominant_weight},
                     {"dominant_sign", u.dominant_weight >= 0.0 ? "+" : "-"},
                     {"residual_mean", u.residual_mean},
                     {"residual_stddev", u.residual_stddev},
                     {"separation", u.separation},
                     {"score", u.score},
                     {"collision", u.collision}});
  }
  json matching = json::array();
  for (const auto& m : report.matching) {
    matching.push_back(m ? json(*m) : json(nullptr));
  }
  json out = {{"global_score", report.global_score},
              {"threshold", kGlobalRfThreshold},
              {"verdict", report.global_rf_present() ? "global RF present"
                                                     : "global RF absent"},
              {"matching", matching},
              {"matching_complete", report.matching_complete},
              {"units", units}};
  if (fit) {
    out["template_fit"] = {{"w_max", fit->w_max},
                           {"w_min", fit->w_min},
                           {"rms_residual", fit->rms_residual},
                           {"partial", fit->partial}};
  }
  return out;
}

void write_rf_csv(std::ostream& out, const RfReport& report) {
  out << "hidden,dominant_visible,dominant_weight,residual_mean,"
         "residual_stddev,separation,score,matched\n";
  for (std::size_t j = 0; j < report.units.size(); ++j) {
    const HiddenUnitField& u = report.units[j];
    out << j << ',' << u.dominant_visible << ','
        << format_double(u.dominant_weight) << ','
        << format_double(u.residual_mean) << ','
        << format_double(u.residual_stddev) << ','
        << format_double(u.separation) << ',' << format_double(u.score) << ','
        << (report.matching[j] ? 1 : 0) << '\n';
  }
  check_stream(out, "write_rf_csv");
}

void write_phase_csv_header(std::ostream& out) {
  out << "w_min,w_max,best_D,best_F\n";
}

void write_phase_csv_rows(std::ostream& out,
                          std::span<const SectorPoint> points) {
  for (const SectorPoint& p : points) {
    out << format_double(p.w_min) << ',' << format_double(p.w_max) << ','
        << (p.best_d ? static_cast<long long>(*p.best_d) : -1LL) << ','
        << format_double(p.best_fidelity) << '\n';
  }
  check_stream(out, "write_phase_csv_rows");
}

json phase_header_json(std::size_t n_qubits, const AxisSpec& w_min_axis,
                       const AxisSpec& w_max_axis, double threshold) {
  auto axis = [](const AxisSpec& a) {
    return json{{"start", a.start}, {"stop", a.stop()}, {"step", a.step},
                {"count", a.count}};
  };
  return json{{"n_qubits", n_qubits},
              {"threshold", threshold},
              {"w_min_axis", axis(w_min_axis)},
              {"w_max_axis", axis(w_max_axis)},
              {"row_order", "w_max ascending, then w_min ascending"},
              {"columns", {"w_min", "w_max", "best_D", "best_F"}}};
}

std::array<std::uint8_t, 3> sector_color(std::optional<std::size_t> d,
                                         std::size_t n_qubits) {
  if (!d) return {255, 255, 255};
  const double frac =
      n_qubits == 0 ? 0.0
                    : static_cast<double>(*d) / static_cast<double>(n_qubits);
  const double hue = 270.0 * frac / 60.0;  // sextant
  const double x = 1.0 - std::abs(std::fmod(hue, 2.0) - 1.0);
  double r = 0.0, g = 0.0, b = 0.0;
  switch (static_cast<int>(hue)) {
    case 0: r = 1; g = x; break;
    case 1: r = x; g = 1; break;
    case 2: g = 1; b = x; break;
    case 3: g = x; b = 1; break;
    default: r = x; b = 1; break;
  }
  auto level = [](double c) {
    return static_cast<std::uint8_t>(std::lround(255.0 * c));
  };
  return {level(r), level(g), level(b)};
}

void write_phase_ppm(std::ostream& out, const PhaseDiagramGrid& grid) {
  out << "P3\n" << grid.cols() << ' ' << grid.rows() << "\n255\n";
  for (std::size_t r = grid.rows(); r-- > 0;) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const auto rgb = sector_color(grid.at(r, c).best_d, grid.n_qubits);
      if (c) out << ' ';
      out << int{rgb[0]} << ' ' << int{rgb[1]} << ' ' << int{rgb[2]};
    }
    out << '\n';
  }
  check_stream(out, "write_phase_ppm");
}

void write_path_csv(std::ostream& out, std::span<const FidelityPathRow> rows,
                    std::span<const std::size_t> d_list) {
  out << "t,w_min,w_max";
  for (std::size_t d : d_list) out << ",F_" << d;
  out << '\n';
  for (const FidelityPathRow& row : rows) {
    out << format_double(row.t) << ',' << format_double(row.w_min) << ','
        << format_double(row.w_max);
    for (double f : row.fidelities) out << ',' << format_double(f);
    out << '\n';
  }
  check_stream(out, "write_path_csv");
}

}  // namespace dicke
