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

// Neural quantum state tomography of positive states: fit an RBM to
// computational-basis measurement records by contrastive divergence.

#ifndef DICKE_TOMOGRAPHY_HPP_
#define DICKE_TOMOGRAPHY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dicke/random.hpp"
#include "dicke/rbm.hpp"
#include "dicke/state.hpp"

namespace dicke {

// Largest N for which the trainer computes log Z (and hence NLL / KL) every
// epoch.
inline constexpr std::size_t kMaxTracedLogZQubits = 20;

enum class CheckpointMetric { kFidelity, kKl };

CheckpointMetric checkpoint_metric_from_string(std::string_view name);
std::string_view to_string(CheckpointMetric metric);

struct TrainingConfig {
  int cd_steps = 10;
  double learning_rate = 0.1;
  int epochs = 2000;
  int batch_size = 100;
  std::uint64_t seed = 0;
  // Falls back to kKl when no target state is supplied.
  CheckpointMetric checkpoint_metric = CheckpointMetric::kFidelity;
  // Weights start i.i.d. uniform in [-init_scale, init_scale]; biases at 0.
  double init_scale = 0.05;

  // Throws DomainError on non-positive cd_steps / learning_rate /
  // batch_size, negative epochs or negative init_scale.
  void validate() const;
};

struct EpochRecord {
  int epoch = 0;  // 0 = initial parameters
  std::optional<double> fidelity;
  // Negative log-likelihood of the training set, and KL(empirical || model).
  // Empty when N > 20 (log Z not computed).
  std::optional<double> nll;
  std::optional<double> kl;
};

struct TrainingTrace {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  RbmParameters best_parameters;
  // The metric actually used to select best_parameters.
  CheckpointMetric metric = CheckpointMetric::kKl;
};

struct TomographyResult {
  // The selected checkpoint (equal to trace.best_parameters).
  RbmParameters parameters;
  RbmParameters final_parameters;
  TrainingTrace trace;
};

using EpochObserver = std::function<void(const EpochRecord&)>;

// Log-likelihood gradient estimate, same shapes as RbmParameters.
struct RbmGradient {
  Eigen::MatrixXd weights;
  Eigen::VectorXd visible_bias;
  Eigen::VectorXd hidden_bias;

  bool all_finite() const {
    return weights.allFinite() && visible_bias.allFinite() &&
           hidden_bias.allFinite();
  }
};

// CD-k estimate of the mean gradient of log p(v) over the rows of batch
// (each row a 0/1 visible configuration): positive phase at the rows with
// hidden means, negative phase after cd_steps block-Gibbs sweeps started at
// the rows, also with hidden means.
RbmGradient cd_gradient(const RbmParameters& rbm, const Eigen::MatrixXd& batch,
                        int cd_steps, Rng& rng);

// Minimizes KL(empirical || p_rbm) with CD-k. Per mini-batch: positive phase
// at the data with hidden conditional means, negative phase at the visible
// states reached after cd_steps block-Gibbs sweeps started from the batch
// (again with hidden means), then lambda += lr * (positive - negative).
// Mini-batches come from a per-epoch shuffle. Fully deterministic given
// config.seed.
//
// Throws DomainError on empty data, n_hidden == 0 or bitstrings whose length
// differs from data.n_qubits (or from target), and TrainingError when a
// gradient turns non-finite.
TomographyResult train_tomography(const SampleSet& data, std::size_t n_hidden,
                                  const TrainingConfig& config,
                                  const std::optional<DickeState>& target,
                                  const EpochObserver& observer = {});

inline constexpr double kScalingStudyLearningRate = 0.01;

struct ScalingRow {
  std::size_t n_hidden = 0;
  double best_fidelity = 0.0;
  int best_epoch = 0;
};

// Trains one RBM per hidden-unit count on the same data and reports the
// best fidelity with target. Callers normally pass a config with
// learning_rate = kScalingStudyLearningRate. Throws DomainError for an empty
// list or a zero entry.
std::vector<ScalingRow> hidden_unit_scaling_study(
    const SampleSet& data, const DickeState& target,
    std::span<const std::size_t> hidden_counts, const TrainingConfig& config);

}  // namespace dicke

#endif  // DICKE_TOMOGRAPHY_HPP_
