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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dicke/error.hpp"
#include "dicke/numeric.hpp"

namespace dicke {
namespace {

RbmParameters random_rbm(std::size_t n, std::size_t m, double scale,
                         std::uint64_t seed) {
  Rng rng(seed);
  RbmParameters rbm(n, m);
  auto draw = [&] { return scale * (2.0 * rng.uniform() - 1.0); };
  for (Eigen::Index i = 0; i < rbm.weights.size(); ++i) rbm.weights.data()[i] = draw();
  for (Eigen::Index i = 0; i < rbm.visible_bias.size(); ++i) rbm.visible_bias(i) = draw();
  for (Eigen::Index i = 0; i < rbm.hidden_bias.size(); ++i) rbm.hidden_bias(i) = draw();
  return rbm;
}

// Exact gradient of the mean log-likelihood of the empirical distribution
// over the samples, by enumerating the model distribution.
RbmGradient exact_gradient(const RbmParameters& rbm, const SampleSet& data) {
  const auto n = static_cast<Eigen::Index>(rbm.n_visible());
  const auto m = static_cast<Eigen::Index>(rbm.n_hidden());
  auto stats = [&](std::uint64_t mask, double weight, RbmGradient& g) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = double((mask >> i) & 1U);
    Eigen::VectorXd h(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      h(j) = sigmoid(rbm.hidden_bias(j) + v.dot(rbm.weights.col(j)));
    }
    g.weights += weight * v * h.transpose();
    g.visible_bias += weight * v;
    g.hidden_bias += weight * h;
  };
  auto zero = [&] {
    return RbmGradient{Eigen::MatrixXd::Zero(n, m), Eigen::VectorXd::Zero(n),
                       Eigen::VectorXd::Zero(m)};
  };
  RbmGradient pos = zero();
  for (const BitString& v : data.samples) {
    stats(v.to_mask(), 1.0 / double(data.samples.size()), pos);
  }
  RbmGradient neg = zero();
  const double log_z = partition_function(rbm);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    stats(mask, std::exp(log_unnormalized_probability(rbm, mask) - log_z), neg);
  }
  return {pos.weights - neg.weights, pos.visible_bias - neg.visible_bias,
          pos.hidden_bias - neg.hidden_bias};
}

Eigen::MatrixXd to_matrix(const SampleSet& data) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(data.samples.size()),
                      static_cast<Eigen::Index>(data.n_qubits));
  for (std::size_t s = 0; s < data.samples.size(); ++s) {
    for (std::size_t i = 0; i < data.n_qubits; ++i) {
      out(Eigen::Index(s), Eigen::Index(i)) = data.samples[s][i];
    }
  }
  return out;
}

TEST(CdGradientTest, LongChainsApproachExactGradient) {
  const SampleSet data = sample_measurements(DickeState(3, 1), 100000, 5);
  const RbmParameters rbm = random_rbm(3, 2, 0.5, 9);
  Rng rng(17);
  const RbmGradient cd = cd_gradient(rbm, to_matrix(data), 50, rng);
  const RbmGradient exact = exact_gradient(rbm, data);
  ASSERT_TRUE(cd.all_finite());
  EXPECT_LT((cd.weights - exact.weights).cwiseAbs().maxCoeff(), 0.01);
  EXPECT_LT((cd.visible_bias - exact.visible_bias).cwiseAbs().maxCoeff(), 0.01);
  EXPECT_LT((cd.hidden_bias - exact.hidden_bias).cwiseAbs().maxCoeff(), 0.01);
  // The signal is well above the tolerance.
  EXPECT_GT(exact.visible_bias.cwiseAbs().maxCoeff(), 0.05);
}

TEST(CdGradientTest, VanishesWhenModelMatchesData) {
  // A zero RBM is uniform; so is the data below.
  SampleSet data;
  data.n_qubits = 2;
  for (int r = 0; r < 5000; ++r) {
    for (std::uint64_t m = 0; m < 4; ++m) data.samples.push_back(BitString::from_mask(m, 2));
  }
  Rng rng(3);
  const RbmGradient g = cd_gradient(RbmParameters(2, 2), to_matrix(data), 1, rng);
  EXPECT_LT(g.weights.cwiseAbs().maxCoeff(), 0.01);
  EXPECT_LT(g.visible_bias.cwiseAbs().maxCoeff(), 0.02);
  EXPECT_NEAR(g.hidden_bias.cwiseAbs().maxCoeff(), 0.0, 1e-12);
}

TEST(TrainTomographyTest, ZeroEpochsKeepsInitialization) {
  const SampleSet data = sample_measurements(DickeState(4, 2), 200, 1);
  TrainingConfig cfg;
  cfg.epochs = 0;
  cfg.seed = 11;
  const TomographyResult r = train_tomography(data, 3, cfg, DickeState(4, 2));
  ASSERT_EQ(r.trace.epochs.size(), 1u);
  EXPECT_EQ(r.trace.best_epoch, 0);
  EXPECT_EQ(r.parameters.weights, r.final_parameters.weights);
  EXPECT_LE(r.parameters.weights.cwiseAbs().maxCoeff(), cfg.init_scale);
  EXPECT_EQ(r.parameters.visible_bias, Eigen::VectorXd::Zero(4));
  EXPECT_EQ(r.parameters.hidden_bias, Eigen::VectorXd::Zero(3));
  EXPECT_TRUE(r.trace.epochs[0].fidelity.has_value());
  EXPECT_TRUE(r.trace.epochs[0].kl.has_value());
}

TEST(TrainTomographyTest, BitwiseDeterministic) {
  const SampleSet data = sample_measurements(DickeState(5, 2), 500, 2);
  TrainingConfig cfg;
  cfg.epochs = 15;
  cfg.seed = 42;
  const TomographyResult a = train_tomography(data, 5, cfg, DickeState(5, 2));
  const TomographyResult b = train_tomography(data, 5, cfg, DickeState(5, 2));
  EXPECT_EQ(a.final_parameters.weights, b.final_parameters.weights);
  EXPECT_EQ(a.final_parameters.visible_bias, b.final_parameters.visible_bias);
  EXPECT_EQ(a.final_parameters.hidden_bias, b.final_parameters.hidden_bias);
  EXPECT_EQ(a.trace.best_epoch, b.trace.best_epoch);
  cfg.seed = 43;
  const TomographyResult c = train_tomography(data, 5, cfg, DickeState(5, 2));
  EXPECT_NE(a.final_parameters.weights, c.final_parameters.weights);
}

TEST(TrainTomographyTest, LearnsSmallDickeState) {
  const DickeState target(4, 1);
  const SampleSet data = sample_measurements(target, 1000, 3);
  TrainingConfig cfg;
  cfg.epochs = 300;
  cfg.batch_size = 20;
  cfg.seed = 3;
  std::vector<int> seen;
  const TomographyResult r = train_tomography(
      data, 4, cfg, target, [&](const EpochRecord& rec) { seen.push_back(rec.epoch); });
  ASSERT_EQ(seen.size(), 301u);
  EXPECT_EQ(seen.front(), 0);
  EXPECT_EQ(seen.back(), 300);
  const EpochRecord& best = r.trace.epochs[std::size_t(r.trace.best_epoch)];
  EXPECT_GT(*best.fidelity, 0.9);
  EXPECT_GT(*best.fidelity, *r.trace.epochs[0].fidelity);
  EXPECT_LT(*r.trace.epochs.back().kl, *r.trace.epochs[0].kl);
  for (const EpochRecord& rec : r.trace.epochs) {
    EXPECT_LE(*rec.fidelity, *best.fidelity);
    EXPECT_GE(*rec.kl, -1e-12);
    EXPECT_NEAR(*rec.nll - *rec.kl, *r.trace.epochs[0].nll - *r.trace.epochs[0].kl,
                1e-9);
  }
  // The trained state is still normalized.
  const double log_z = partition_function(r.parameters);
  double norm = 0.0;
  for (const BitString& v : enumerate_basis(4)) {
    norm += std::pow(amplitude(r.parameters, v, log_z), 2);
  }
  EXPECT_NEAR(norm, 1.0, 1e-10);
}

TEST(TrainTomographyTest, KlCheckpointWithoutTarget) {
  const SampleSet data = sample_measurements(DickeState(4, 2), 500, 4);
  TrainingConfig cfg;
  cfg.epochs = 20;
  const TomographyResult r = train_tomography(data, 4, cfg, std::nullopt);
  EXPECT_EQ(r.trace.metric, CheckpointMetric::kKl);
  for (const EpochRecord& rec : r.trace.epochs) {
    EXPECT_FALSE(rec.fidelity.has_value());
    EXPECT_GE(*rec.nll, *r.trace.epochs[std::size_t(r.trace.best_epoch)].nll);
  }
}

TEST(TrainTomographyTest, RejectsBadInput) {
  const SampleSet data = sample_measurements(DickeState(4, 2), 100, 1);
  TrainingConfig cfg;
  cfg.epochs = 1;
  EXPECT_THROW(train_tomography(data, 0, cfg, std::nullopt), DomainError);
  EXPECT_THROW(train_tomography(data, 2, cfg, DickeState(5, 2)), DomainError);
  SampleSet empty;
  empty.n_qubits = 4;
  EXPECT_THROW(train_tomography(empty, 2, cfg, std::nullopt), DomainError);
  SampleSet ragged = data;
  ragged.samples[7] = BitString(3);
  EXPECT_THROW(train_tomography(ragged, 2, cfg, std::nullopt), DomainError);
  for (auto mutate : {+[](TrainingConfig& c) { c.cd_steps = 0; },
                      +[](TrainingConfig& c) { c.learning_rate = 0.0; },
                      +[](TrainingConfig& c) { c.batch_size = 0; },
                      +[](TrainingConfig& c) { c.epochs = -1; }}) {
    TrainingConfig bad = cfg;
    mutate(bad);
    EXPECT_THROW(train_tomography(data, 2, bad, std::nullopt), DomainError);
  }
}

TEST(TrainTomographyTest, DivergenceRaisesTrainingError) {
  const SampleSet data = sample_measurements(DickeState(3, 1), 50, 1);
  TrainingConfig cfg;
  cfg.epochs = 20;
  cfg.seed = 0;
  cfg.learning_rate = 1.7e308;
  cfg.init_scale = 1.7e308;
  EXPECT_THROW(train_tomography(data, 3, cfg, std::nullopt), TrainingError);
}

TEST(CheckpointMetricTest, RoundTrip) {
  EXPECT_EQ(checkpoint_metric_from_string("kl"), CheckpointMetric::kKl);
  EXPECT_EQ(checkpoint_metric_from_string(to_string(CheckpointMetric::kFidelity)),
            CheckpointMetric::kFidelity);
  EXPECT_THROW(checkpoint_metric_from_string("nll"), DomainError);
}

TEST(ScalingStudyTest, OneRowPerHiddenCount) {
  const DickeState target(4, 1);
  const SampleSet data = sample_measurements(target, 300, 8);
  TrainingConfig cfg;
  cfg.epochs = 5;
  cfg.learning_rate = kScalingStudyLearningRate;
  const std::vector<std::size_t> counts = {1, 2, 4};
  const auto rows = hidden_unit_scaling_study(data, target, counts, cfg);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].n_hidden, counts[k]);
    EXPECT_GE(rows[k].best_fidelity, 0.0);
    EXPECT_LE(rows[k].best_fidelity, 1.0);
  }
  EXPECT_THROW(hidden_unit_scaling_study(data, target, std::vector<std::size_t>{}, cfg),
               DomainError);
  EXPECT_THROW(hidden_unit_scaling_study(data, target, std::vector<std::size_t>{0}, cfg),
               DomainError);
}

}  // namespace
}  // namespace dicke
