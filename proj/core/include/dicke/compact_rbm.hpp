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

// Two-parameter compact RBM for the Dicke family.
//
// M = N hidden units, zero biases, and hidden unit j couples with weight
// w_max to visible unit j and with w_min to every other visible unit. Every
// bitstring of Hamming weight d then has the same unnormalized probability
//
//   p~(d) = (1 + e^{w_max + (d-1) w_min})^d (1 + e^{d w_min})^{N-d},
//
// so the state decomposes exactly over Dicke sectors with
// F_D = p~(D) C(N,D) / sum_d p~(d) C(N,d). Everything here works in log
// space and scales to N ~ 1e3 without enumerating the basis.

#ifndef DICKE_COMPACT_RBM_HPP_
#define DICKE_COMPACT_RBM_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dicke/rbm.hpp"

namespace dicke {

// Default classification threshold: a grid point belongs to no sector when
// its best fidelity does not exceed this.
inline constexpr double kSectorThreshold = 0.5;
// Sectors whose fidelities differ by less than this are a tie; the smaller
// D wins.
inline constexpr double kSectorTieTolerance = 1e-12;

class CompactRbm {
 public:
  // Throws DomainError for N == 0 or non-finite weights. The sign
  // convention w_min < 0 < w_max is not enforced (phase-diagram sweeps may
  // cross it); see has_global_rf_signs().
  CompactRbm(std::size_t n_qubits, double w_min, double w_max);

  // w_min = -scale, w_max = ratio * scale. Throws DomainError unless
  // scale > 0.
  static CompactRbm from_ratio(std::size_t n_qubits, double scale,
                               double ratio);

  std::size_t n_qubits() const { return n_qubits_; }
  double w_min() const { return w_min_; }
  double w_max() const { return w_max_; }
  // w_max / -w_min.
  double ratio() const { return w_max_ / -w_min_; }
  bool has_global_rf_signs() const { return w_min_ < 0.0 && w_max_ > 0.0; }

 private:
  std::size_t n_qubits_;
  double w_min_;
  double w_max_;
};

// log p~(d) = d softplus(w_max + (d-1) w_min) + (N-d) softplus(d w_min).
// Throws DomainError for d > N.
double log_unnormalized_weight_probability(const CompactRbm& c, std::size_t d);

// F_0 ... F_N in one pass.
std::vector<double> sector_fidelities(const CompactRbm& c);

// F_D = (1 + sum_{d != D} exp(Delta_d))^-1 with
// Delta_d = log p~(d) - log p~(D) + log C(N,d) - log C(N,D). Throws
// DomainError for D > N.
double fidelity_analytic(const CompactRbm& c, std::size_t dicke_index);

// Weights for which the compact RBM tends to |Psi^D_N> as scale grows.
//
// With K visible units on, a hidden unit whose partner is on contributes
// energy Delta E = w_max + (K-1) w_min, every other hidden unit K w_min < 0.
// The energy-maximizing hidden configuration turns on exactly the K partner
// units, for total K w_max + K(K-1) w_min, which peaks at
// K = (1 - w_max / w_min) / 2. Setting that peak to K = D gives
// w_max / -w_min = 2D - 1. The scale plays the role of an inverse
// temperature: fidelity -> 1 only as scale -> infinity.
//
// Returns w_min = -scale, w_max = (2D - 1) scale. Throws DomainError unless
// 1 <= D <= N-1 (D = 0 and D = N are product states and make the ratio
// degenerate) and scale > 0.
CompactRbm optimal_weights(std::size_t n_qubits, std::size_t dicke_index,
                           double scale);

struct SectorChoice {
  // Empty when best_fidelity <= threshold.
  std::optional<std::size_t> best_d;
  std::size_t argmax_d = 0;
  double best_fidelity = 0.0;
  // Another sector came within kSectorTieTolerance of the best.
  bool tie = false;
};

SectorChoice classify(const CompactRbm& c,
                      double threshold = kSectorThreshold);

// Uniformly spaced axis: value(i) = start + i * step, i < count.
struct AxisSpec {
  double start = 0.0;
  double step = 1.0;
  std::size_t count = 1;

  // Points start, start + step, ... not exceeding stop (with a 1e-9 relative
  // slack). Throws DomainError unless finite with step > 0 and stop >= start.
  static AxisSpec from_step(double start, double stop, double step);
  // count points spanning [start, stop] inclusive. count == 1 gives {start}.
  static AxisSpec from_count(double start, double stop, std::size_t count);

  double value(std::size_t i) const {
    return start + static_cast<double>(i) * step;
  }
  double stop() const { return value(count - 1); }
};

struct SectorPoint {
  double w_min = 0.0;
  double w_max = 0.0;
  std::optional<std::size_t> best_d;
  double best_fidelity = 0.0;
  bool tie = false;
};

// Row r holds w_max = w_max_axis.value(r); column c holds
// w_min = w_min_axis.value(c).
struct PhaseDiagramGrid {
  std::size_t n_qubits = 0;
  double threshold = kSectorThreshold;
  AxisSpec w_min_axis;
  AxisSpec w_max_axis;
  std::vector<SectorPoint> points;  // row-major

  std::size_t rows() const { return w_max_axis.count; }
  std::size_t cols() const { return w_min_axis.count; }
  const SectorPoint& at(std::size_t row, std::size_t col) const {
    return points[row * cols() + col];
  }
};

using PhaseRowSink =
    std::function<void(std::size_t row, std::span<const SectorPoint> points)>;

// Evaluates the grid one w_max row at a time (points within a row in
// parallel) and hands each finished row to sink in increasing row order.
void phase_diagram_rows(std::size_t n_qubits, const AxisSpec& w_min_axis,
                        const AxisSpec& w_max_axis, double threshold,
                        const PhaseRowSink& sink);

PhaseDiagramGrid phase_diagram(std::size_t n_qubits, const AxisSpec& w_min_axis,
                               const AxisSpec& w_max_axis,
                               double threshold = kSectorThreshold);

struct WeightPoint {
  double w_min = 0.0;
  double w_max = 0.0;
};

struct FidelityPathRow {
  double t = 0.0;
  double w_min = 0.0;
  double w_max = 0.0;
  std::vector<double> fidelities;  // aligned with the requested D list
};

// Samples F_D along the segment from -> to at t = k / (samples - 1). A
// zero-length segment or samples == 1 yields a single row. Throws
// DomainError for non-finite endpoints, samples == 0 or D > N.
std::vector<FidelityPathRow> fidelity_path(std::size_t n_qubits,
                                           WeightPoint from, WeightPoint to,
                                           std::size_t samples,
                                           std::span<const std::size_t> d_list);

// Materializes the N x N matrix (diagonal w_max, off-diagonal w_min) with
// zero biases.
RbmParameters export_explicit(const CompactRbm& c);

}  // namespace dicke

#endif  // DICKE_COMPACT_RBM_HPP_
