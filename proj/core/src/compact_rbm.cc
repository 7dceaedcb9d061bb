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

#include "dicke/compact_rbm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/error.hpp"
#include "dicke/numeric.hpp"
#include "dicke/parallel.hpp"
#include "dicke/state.hpp"

namespace dicke {
namespace {

// log p~(d) + log C(N, d) for every d.
std::vector<double> log_sector_weights(const CompactRbm& c) {
  const std::size_t n = c.n_qubits();
  std::vector<double> out(n + 1);
  for (std::size_t d = 0; d <= n; ++d) {
    out[d] = log_unnormalized_weight_probability(c, d) +
             log_binomial(static_cast<std::int64_t>(n),
                          static_cast<std::int64_t>(d));
  }
  return out;
}

void require_sector(const CompactRbm& c, std::size_t d, const char* where) {
  if (d > c.n_qubits()) {
    throw DomainError(std::string(where) + ": d=" + std::to_string(d) +
                      " outside [0, N=" + std::to_string(c.n_qubits()) + "]");
  }
}

}  // namespace

CompactRbm::CompactRbm(std::size_t n_qubits, double w_min, double w_max)
    : n_qubits_(n_qubits), w_min_(w_min), w_max_(w_max) {
  if (n_qubits == 0) throw DomainError("CompactRbm: N must be positive");
  if (!std::isfinite(w_min) || !std::isfinite(w_max)) {
    throw DomainError("CompactRbm: weights must be finite");
  }
}

CompactRbm CompactRbm::from_ratio(std::size_t n_qubits, double scale,
                                  double ratio) {
  if (!(scale > 0.0)) throw DomainError("CompactRbm: scale must be > 0");
  return CompactRbm(n_qubits, -scale, ratio * scale);
}

double log_unnormalized_weight_probability(const CompactRbm& c, std::size_t d) {
  require_sector(c, d, "log_unnormalized_weight_probability");
  const auto dd = static_cast<double>(d);
  const auto rest = static_cast<double>(c.n_qubits() - d);
  // d == 0 has no partner-on hidden units; skip the first factor so that a
  // huge negative (d-1) w_min cannot leak an inf * 0.
  const double on =
      d == 0 ? 0.0 : dd * softplus(c.w_max() + (dd - 1.0) * c.w_min());
  const double off = rest == 0.0 ? 0.0 : rest * softplus(dd * c.w_min());
  return on + off;
}

std::vector<double> sector_fidelities(const CompactRbm& c) {
  std::vector<double> logs = log_sector_weights(c);
  const double log_norm = log_sum_exp(logs);
  for (double& l : logs) l = std::exp(l - log_norm);
  return logs;
}

double fidelity_analytic(const CompactRbm& c, std::size_t dicke_index) {
  require_sector(c, dicke_index, "fidelity_analytic");
  const std::vector<double> logs = log_sector_weights(c);
  // 1 / (1 + sum_{d != D} e^{Delta_d}) = exp(-logsumexp_d Delta_d), with
  // Delta_D = 0. Large Delta_d drive the result to 0 without overflow.
  const double anchor = logs[dicke_index];
  LogSumExp acc;
  for (double l : logs) acc.add(l - anchor);
  return std::exp(-acc.value());
}

CompactRbm optimal_weights(std::size_t n_qubits, std::size_t dicke_index,
                           double scale) {
  if (dicke_index == 0 || dicke_index >= n_qubits) {
    throw DomainError("optimal_weights: require 1 <= D <= N-1, got N=" +
                      std::to_string(n_qubits) +
                      " D=" + std::to_string(dicke_index) +
                      " (D = 0 and D = N are product states)");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("optimal_weights: scale must be positive and finite");
  }
  return CompactRbm::from_ratio(
      n_qubits, scale, 2.0 * static_cast<double>(dicke_index) - 1.0);
}

SectorChoice classify(const CompactRbm& c, double threshold) {
  const std::vector<double> f = sector_fidelities(c);
  SectorChoice out;
  out.argmax_d = 0;
  out.best_fidelity = f[0];
  for (std::size_t d = 1; d < f.size(); ++d) {
    if (f[d] > out.best_fidelity + kSectorTieTolerance) {
      out.argmax_d = d;
      out.best_fidelity = f[d];
      out.tie = false;
    } else if (std::abs(f[d] - out.best_fidelity) <= kSectorTieTolerance) {
      out.tie = true;
    }
  }
  if (out.best_fidelity > threshold) out.best_d = out.argmax_d;
  return out;
}

AxisSpec AxisSpec::from_step(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) ||
      !(step > 0.0) || stop < start) {
    throw DomainError("AxisSpec: require finite start <= stop and step > 0");
  }
  const double span = (stop - start) / step;
  const auto count = static_cast<std::size_t>(
                         std::floor(span + 1e-9 * std::max(1.0, span))) +
                     1;
  return {start, step, count};
}

AxisSpec AxisSpec::from_count(double start, double stop, std::size_t count) {
  if (!std::isfinite(start) || !std::isfinite(stop) || stop < start ||
      count == 0) {
    throw DomainError("AxisSpec: require finite start <= stop and count > 0");
  }
  if (count == 1) return {start, 1.0, 1};
  const double step = (stop - start) / static_cast<double>(count - 1);
  if (!(step > 0.0)) throw DomainError("AxisSpec: zero-width axis");
  return {start, step, count};
}

void phase_diagram_rows(std::size_t n_qubits, const AxisSpec& w_min_axis,
                        const AxisSpec& w_max_axis, double threshold,
                        const PhaseRowSink& sink) {
  if (n_qubits == 0) throw DomainError("phase_diagram: N must be positive");
  std::vector<SectorPoint> row(w_min_axis.count);
  for (std::size_t r = 0; r < w_max_axis.count; ++r) {
    const double w_max = w_max_axis.value(r);
    parallel_for(w_min_axis.count, [&](std::size_t col) {
      const double w_min = w_min_axis.value(col);
      const SectorChoice choice =
          classify(CompactRbm(n_qubits, w_min, w_max), threshold);
      row[col] = {w_min, w_max, choice.best_d, choice.best_fidelity,
                  choice.tie};
    });
    sink(r, row);
  }
}

PhaseDiagramGrid phase_diagram(std::size_t n_qubits, const AxisSpec& w_min_axis,
                               const AxisSpec& w_max_axis, double threshold) {
  PhaseDiagramGrid grid;
  grid.n_qubits = n_qubits;
  grid.threshold = threshold;
  grid.w_min_axis = w_min_axis;
  grid.w_max_axis = w_max_axis;
  grid.points.reserve(w_min_axis.count * w_max_axis.count);
  phase_diagram_rows(n_qubits, w_min_axis, w_max_axis, threshold,
                     [&](std::size_t, std::span<const SectorPoint> row) {
                       grid.points.insert(grid.points.end(), row.begin(),
                                          row.end());
                     });
  return grid;
}

std::vector<FidelityPathRow> fidelity_path(std::size_t n_qubits,
                                           WeightPoint from, WeightPoint to,
                                           std::size_t samples,
                                           std::span<const std::size_t> d_list) {
  if (samples == 0) throw DomainError("fidelity_path: samples must be > 0");
  if (!std::isfinite(from.w_min) || !std::isfinite(from.w_max) ||
      !std::isfinite(to.w_min) || !std::isfinite(to.w_max)) {
    throw DomainError("fidelity_path: endpoints must be finite");
  }
  for (std::size_t d : d_list) {
    if (d > n_qubits) {
      throw DomainError("fidelity_path: D=" + std::to_string(d) + " > N");
    }
  }
  const bool degenerate = from.w_min == to.w_min && from.w_max == to.w_max;
  const std::size_t count = degenerate ? 1 : samples;

  std::vector<FidelityPathRow> rows(count);
  parallel_for(count, [&](std::size_t k) {
    const double t =
        count == 1 ? 0.0
                   : static_cast<double>(k) / static_cast<double>(count - 1);
    FidelityPathRow& row = rows[k];
    row.t = t;
    row.w_min = from.w_min + t * (to.w_min - from.w_min);
    row.w_max = from.w_max + t * (to.w_max - from.w_max);
    const std::vector<double> f =
        sector_fidelities(CompactRbm(n_qubits, row.w_min, row.w_max));
    row.fidelities.reserve(d_list.size());
    for (std::size_t d : d_list) row.fidelities.push_back(f[d]);
  });
  return rows;
}

RbmParameters export_explicit(const CompactRbm& c) {
  const std::size_t n = c.n_qubits();
  RbmParameters rbm(n, n);
  rbm.weights.setConstant(c.w_min());
  rbm.weights.diagonal().setConstant(c.w_max());
  return rbm;
}

}  // namespace dicke
