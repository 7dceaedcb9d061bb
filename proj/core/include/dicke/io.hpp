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

// File formats for weights, training traces, RF reports and phase diagrams.
// Floating-point text is written with 17 significant digits.

#ifndef DICKE_IO_HPP_
#define DICKE_IO_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dicke/compact_rbm.hpp"
#include "dicke/rbm.hpp"
#include "dicke/rf_analysis.hpp"
#include "dicke/tomography.hpp"

namespace dicke {

std::string format_double(double value);

// {"n_visible", "n_hidden", "W": [[row 0], ...] (rows = visible index),
//  "a", "b", "metadata"}.
nlohmann::json rbm_to_json(const RbmParameters& rbm,
                           const nlohmann::json& metadata = nlohmann::json::object());
// Throws ParseError on missing fields or inconsistent shapes.
RbmParameters rbm_from_json(const nlohmann::json& j);
// Parses text first; syntax errors report line and column.
RbmParameters parse_rbm_json(std::string_view text);
// Returns the document parsed from text, with the same error reporting.
nlohmann::json parse_json_document(std::string_view text,
                                   std::string_view what);

nlohmann::json training_config_to_json(const TrainingConfig& config);

// N rows of M comma-separated weights.
void write_weight_csv(std::ostream& out, const Eigen::MatrixXd& weights);
// Plain portable graymap (P2), one pixel per weight, linearly scaled so the
// minimum maps to 0 and the maximum to 255.
void write_weight_pgm(std::ostream& out, const Eigen::MatrixXd& weights);

// Columns epoch,fidelity,nll,kl,best; empty cells for unavailable metrics and
// best = 1 on the selected epoch.
void write_trace_csv(std::ostream& out, const TrainingTrace& trace);

nlohmann::json rf_report_to_json(const RfReport& report,
                                 const std::optional<TemplateFit>& fit);
// Columns hidden,dominant_visible,dominant_weight,residual_mean,
// residual_stddev,separation,score,matched.
void write_rf_csv(std::ostream& out, const RfReport& report);

// Phase-diagram CSV: header w_min,w_max,best_D,best_F; best_D is -1 for
// points in no sector.
void write_phase_csv_header(std::ostream& out);
void write_phase_csv_rows(std::ostream& out,
                          std::span<const SectorPoint> points);
nlohmann::json phase_header_json(std::size_t n_qubits,
                                 const AxisSpec& w_min_axis,
                                 const AxisSpec& w_max_axis, double threshold);

// Color ramp for sector D of an N-qubit diagram: hue runs linearly from 0
// (red, D = 0) to 270 degrees (violet, D = N) at full saturation and value;
// no sector renders white.
std::array<std::uint8_t, 3> sector_color(std::optional<std::size_t> d,
                                         std::size_t n_qubits);
// Plain portable pixmap (P3) with w_min increasing to the right and w_max
// increasing upwards.
void write_phase_ppm(std::ostream& out, const PhaseDiagramGrid& grid);

// Columns t,w_min,w_max,F_<d> for each requested d.
void write_path_csv(std::ostream& out, std::span<const FidelityPathRow> rows,
                    std::span<const std::size_t> d_list);

}  // namespace dicke

#endif  // DICKE_IO_HPP_
