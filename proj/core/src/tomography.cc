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

#include "dicke/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "dicke/error.hpp"
#include "dicke/numeric.hpp"
#include "dicke/random.hpp"

namespace dicke {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Seed streams derived from config.seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kTrainStream = 1;

MatrixXd hidden_means(const RbmParameters& rbm, const MatrixXd& visible) {
  MatrixXd act = visible * rbm.weights;
  act.rowwise() += rbm.hidden_bias.transpose();
  return act.unaryExpr([](double x) { return sigmoid(x); });
}

MatrixXd visible_means(const RbmParameters& rbm, const MatrixXd& hidden) {
  MatrixXd act = hidden * rbm.weights.transpose();
  act.rowwise() += rbm.visible_bias.transpose();
  return act.unaryExpr([](double x) { return sigmoid(x); });
}

void sample_in_place(MatrixXd& probs, Rng& rng) {
  // Column-major traversal order is part of the determinism contract.
  for (Index c = 0; c < probs.cols(); ++c) {
    for (Index r = 0; r < probs.rows(); ++r) {
      probs(r, c) = rng.uniform() < probs(r, c) ? 1.0 : 0.0;
    }
  }
}

// Distinct training strings with their multiplicities, for NLL/KL.
struct Histogram {
  std::vector<std::uint64_t> masks;
  std::vector<double> weights;  // empirical probabilities
  double entropy = 0.0;
};

Histogram build_histogram(const SampleSet& data) {
  std::map<std::uint64_t, std::size_t> counts;
  for (const BitString& v : data.samples) ++counts[v.to_mask()];
  Histogram h;
  const double total = static_cast<double>(data.samples.size());
  for (const auto& [mask, count] : counts) {
    const double q = static_cast<double>(count) / total;
    h.masks.push_back(mask);
    h.weights.push_back(q);
    h.entropy -= q * std::log(q);
  }
  return h;
}

EpochRecord evaluate(const RbmParameters& rbm, int epoch,
                     const Histogram* histogram,
                     const std::optional<DickeState>& target) {
  EpochRecord rec;
  rec.epoch = epoch;
  std::optional<double> log_z;
  if (histogram != nullptr) {
    log_z = partition_function(rbm);
    double mean_log_p = 0.0;
    for (std::size_t k = 0; k < histogram->masks.size(); ++k) {
      mean_log_p += histogram->weights[k] *
                    log_unnormalized_probability(rbm, histogram->masks[k]);
    }
    rec.nll = *log_z - mean_log_p;
    rec.kl = *rec.nll - histogram->entropy;
  }
  if (target) {
    rec.fidelity = log_z ? fidelity_exact(rbm, *target, *log_z)
                         : fidelity_exact(rbm, *target);
  }
  return rec;
}

bool improves(const EpochRecord& rec, const EpochRecord& best,
              CheckpointMetric metric) {
  if (metric == CheckpointMetric::kFidelity) {
    return rec.fidelity && (!best.fidelity || *rec.fidelity > *best.fidelity);
  }
  if (rec.nll) return !best.nll || *rec.nll < *best.nll;
  // No computable metric: keep the latest parameters.
  return true;
}

}  // namespace

RbmGradient cd_gradient(const RbmParameters& rbm, const MatrixXd& batch,
                        int cd_steps, Rng& rng) {
  const double inv = 1.0 / static_cast<double>(batch.rows());
  const MatrixXd h0 = hidden_means(rbm, batch);
  MatrixXd vk = batch;
  for (int step = 0; step < cd_steps; ++step) {
    MatrixXd h = hidden_means(rbm, vk);
    sample_in_place(h, rng);
    vk = visible_means(rbm, h);
    sample_in_place(vk, rng);
  }
  const MatrixXd hk = hidden_means(rbm, vk);

  RbmGradient g;
  g.weights = (batch.transpose() * h0 - vk.transpose() * hk) * inv;
  g.visible_bias = (batch.colwise().sum() - vk.colwise().sum()).transpose() * inv;
  g.hidden_bias = (h0.colwise().sum() - hk.colwise().sum()).transpose() * inv;
  return g;
}

CheckpointMetric checkpoint_metric_from_string(std::string_view name) {
  if (name == "fidelity") return CheckpointMetric::kFidelity;
  if (name == "kl") return CheckpointMetric::kKl;
  throw DomainError("unknown checkpoint metric '" + std::string(name) +
                    "' (expected fidelity or kl)");
}

std::string_view to_string(CheckpointMetric metric) {
  return metric == CheckpointMetric::kFidelity ? "fidelity" : "kl";
}

void TrainingConfig::validate() const {
  if (cd_steps <= 0) throw DomainError("TrainingConfig: cd_steps must be > 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw DomainError("TrainingConfig: learning_rate must be positive");
  }
  if (epochs < 0) throw DomainError("TrainingConfig: epochs must be >= 0");
  if (batch_size <= 0) {
    throw DomainError("TrainingConfig: batch_size must be > 0");
  }
  if (!(init_scale >= 0.0)) {
    throw DomainError("TrainingConfig: init_scale must be >= 0");
  }
}

TomographyResult train_tomography(const SampleSet& data, std::size_t n_hidden,
                                  const TrainingConfig& config,
                                  const std::optional<DickeState>& target,
                                  const EpochObserver& observer) {
  config.validate();
  if (data.samples.empty()) throw DomainError("train_tomography: no samples");
  if (n_hidden == 0) throw DomainError("train_tomography: n_hidden must be > 0");
  const std::size_t n = data.n_qubits;
  for (std::size_t s = 0; s < data.samples.size(); ++s) {
    if (data.samples[s].size() != n) {
      throw DomainError("train_tomography: sample " + std::to_string(s) +
                        " has length " +
                        std::to_string(data.samples[s].size()) +
                        ", expected " + std::to_string(n));
    }
  }
  if (target && target->n_qubits() != n) {
    throw DomainError("train_tomography: target has N=" +
                      std::to_string(target->n_qubits()) +
                      " but samples have N=" + std::to_string(n));
  }

  RbmParameters rbm(n, n_hidden);
  {
    Rng init(mix_seed(config.seed, kInitStream));
    for (Index c = 0; c < rbm.weights.cols(); ++c) {
      for (Index r = 0; r < rbm.weights.rows(); ++r) {
        rbm.weights(r, c) = config.init_scale * (2.0 * init.uniform() - 1.0);
      }
    }
  }

  const std::size_t n_samples = data.samples.size();
  MatrixXd all(static_cast<Index>(n_samples), static_cast<Index>(n));
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      all(static_cast<Index>(s), static_cast<Index>(i)) = data.samples[s][i];
    }
  }

  std::optional<Histogram> histogram;
  if (n <= kMaxTracedLogZQubits) histogram = build_histogram(data);
  const Histogram* hist = histogram ? &*histogram : nullptr;

  TomographyResult result;
  TrainingTrace& trace = result.trace;
  trace.metric = (config.checkpoint_metric == CheckpointMetric::kFidelity &&
                  target)
                     ? CheckpointMetric::kFidelity
                     : CheckpointMetric::kKl;

  EpochRecord best = evaluate(rbm, 0, hist, target);
  trace.epochs.push_back(best);
  trace.best_epoch = 0;
  trace.best_parameters = rbm;
  if (observer) observer(best);

  Rng rng(mix_seed(config.seed, kTrainStream));
  std::vector<std::size_t> order(n_samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto batch = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = n_samples; i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(i))]);
    }
    for (std::size_t start = 0; start < n_samples; start += batch) {
      const std::size_t size = std::min(batch, n_samples - start);
      MatrixXd v0(static_cast<Index>(size), static_cast<Index>(n));
      for (std::size_t k = 0; k < size; ++k) {
        v0.row(static_cast<Index>(k)) =
            all.row(static_cast<Index>(order[start + k]));
      }

      const RbmGradient grad = cd_gradient(rbm, v0, config.cd_steps, rng);
      if (!grad.all_finite()) {
        throw TrainingError(
            "train_tomography: non-finite gradient at epoch " +
            std::to_string(epoch) + ", batch starting at sample " +
            std::to_string(start) + " (max |W| = " +
            std::to_string(rbm.weights.cwiseAbs().maxCoeff()) + ")");
      }
      rbm.weights += config.learning_rate * grad.weights;
      rbm.visible_bias += config.learning_rate * grad.visible_bias;
      rbm.hidden_bias += config.learning_rate * grad.hidden_bias;
    }

    EpochRecord rec = evaluate(rbm, epoch, hist, target);
    if (improves(rec, best, trace.metric)) {
      best = rec;
      trace.best_epoch = epoch;
      trace.best_parameters = rbm;
    }
    trace.epochs.push_back(rec);
    if (observer) observer(rec);
  }

  result.parameters = trace.best_parameters;
  result.final_parameters = std::move(rbm);
  return result;
}

std::vector<ScalingRow> hidden_unit_scaling_study(
    const SampleSet& data, const DickeState& target,
    std::span<const std::size_t> hidden_counts, const TrainingConfig& config) {
  if (hidden_counts.empty()) {
    throw DomainError("hidden_unit_scaling_study: empty hidden-unit list");
  }
  for (std::size_t m : hidden_counts) {
    if (m == 0) {
      throw DomainError("hidden_unit_scaling_study: hidden count must be > 0");
    }
  }
  TrainingConfig cfg = config;
  cfg.checkpoint_metric = CheckpointMetric::kFidelity;
  std::vector<ScalingRow> rows;
  for (std::size_t m : hidden_counts) {
    const TomographyResult r = train_tomography(data, m, cfg, target);
    const EpochRecord& best =
        r.trace.epochs[static_cast<std::size_t>(r.trace.best_epoch)];
    rows.push_back({m, best.fidelity.value_or(0.0), r.trace.best_epoch});
  }
  return rows;
}

}  // namespace dicke
