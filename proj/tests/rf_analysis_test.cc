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

#include "dicke/rf_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "dicke/error.hpp"

namespace dicke {
namespace {

Eigen::MatrixXd circulant(int n, double w_max, double w_min) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(n, n, w_min);
  w.diagonal().setConstant(w_max);
  return w;
}

Eigen::MatrixXd gaussian(int rows, int cols, double sigma, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  Eigen::MatrixXd w(rows, cols);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = normal(gen);
  return w;
}

TEST(RfScoreTest, IdealCirculantScoresOne) {
  const RfReport r = rf_score(circulant(8, 100.0, -20.0));
  EXPECT_NEAR(r.global_score, 1.0, 1e-6);
  EXPECT_TRUE(r.global_rf_present());
  EXPECT_TRUE(r.matching_complete);
  for (std::size_t j = 0; j < 8; ++j) {
    EXPECT_EQ(r.matching[j], std::optional<std::size_t>(j));
    EXPECT_EQ(r.units[j].dominant_visible, j);
    EXPECT_EQ(r.units[j].dominant_weight, 100.0);
    EXPECT_EQ(r.units[j].residual_mean, -20.0);
    EXPECT_EQ(r.units[j].residual_stddev, 0.0);
    EXPECT_FALSE(r.units[j].collision);
  }
}

TEST(RfScoreTest, NegativeDominantCouplingRecordsSign) {
  const RfReport r = rf_score(circulant(6, -30.0, 2.0));
  EXPECT_NEAR(r.global_score, 1.0, 1e-6);
  EXPECT_EQ(r.units[2].dominant_weight, -30.0);
}

TEST(RfScoreTest, DegenerateColumnsScoreZero) {
  EXPECT_EQ(rf_score(Eigen::MatrixXd::Zero(5, 5)).global_score, 0.0);
  // Constant nonzero column has no standout coupling.
  EXPECT_EQ(rf_score(Eigen::MatrixXd::Constant(4, 3, -2.0)).global_score, 0.0);
}

TEST(RfScoreTest, GaussianNoiseScoresLow) {
  int below = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const double s = rf_score(gaussian(16, 16, 1.0, seed)).global_score;
    below += s < kGlobalRfThreshold;
    worst = std::max(worst, s);
  }
  EXPECT_GE(below, 99);
  RecordProperty("worst_gaussian_score", std::to_string(worst));
}

TEST(RfScoreTest, PermutationInvariance) {
  const int n = 8;
  Eigen::MatrixXd w = circulant(n, 5.0, -1.0) + gaussian(n, n, 0.2, 7);
  const RfReport base = rf_score(w);
  ASSERT_TRUE(base.matching_complete);

  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> pr(n), pc(n);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), gen);
    std::shuffle(pc.begin(), pc.end(), gen);
    Eigen::MatrixXd p(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) p(pr[i], pc[j]) = w(i, j);
    }
    const RfReport r = rf_score(p);
    EXPECT_NEAR(r.global_score, base.global_score, 1e-12);
    for (int j = 0; j < n; ++j) {
      ASSERT_TRUE(r.matching[pc[j]].has_value());
      EXPECT_EQ(*r.matching[pc[j]], std::size_t(pr[*base.matching[j]]));
    }
  }
}

TEST(RfScoreTest, ScaleInvariance) {
  const Eigen::MatrixXd w = circulant(8, 5.0, -1.0) + gaussian(8, 8, 0.3, 11);
  const double base = rf_score(w).global_score;
  for (double c : {1e-3, 0.5, 7.0, 1e4}) {
    EXPECT_NEAR(rf_score(c * w).global_score, base, 1e-12);
  }
  EXPECT_GT(base, 0.0);
}

TEST(RfScoreTest, CollisionsAreFlagged) {
  Eigen::MatrixXd w = circulant(4, 10.0, -1.0);
  w(0, 1) = 9.0;  // hidden 1 now also prefers visible 0
  w(1, 1) = -1.0;
  const RfReport r = rf_score(w);
  EXPECT_FALSE(r.matching_complete);
  EXPECT_FALSE(r.units[0].collision);
  EXPECT_TRUE(r.units[1].collision);
  EXPECT_FALSE(r.matching[1].has_value());
  EXPECT_EQ(r.matching[0], std::optional<std::size_t>(0));
}

TEST(RfScoreTest, Errors) {
  EXPECT_THROW(rf_score(Eigen::MatrixXd()), DomainError);
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(3, 3);
  w(1, 1) = NAN;
  EXPECT_THROW(rf_score(w), DomainError);
}

TEST(TemplateFitTest, ExactCirculantRecovered) {
  const TemplateFit fit = rf_template_fit(circulant(8, 100.0, -20.0));
  EXPECT_EQ(fit.w_max, 100.0);
  EXPECT_EQ(fit.w_min, -20.0);
  EXPECT_EQ(fit.rms_residual, 0.0);
  EXPECT_FALSE(fit.partial);
}

TEST(TemplateFitTest, PermutedCirculantHasZeroResidual) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Constant(5, 5, -3.0);
  const int partner[5] = {2, 4, 0, 1, 3};
  for (int j = 0; j < 5; ++j) w(partner[j], j) = 12.0;
  const TemplateFit fit = rf_template_fit(w);
  EXPECT_NEAR(fit.rms_residual, 0.0, 1e-15);
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(fit.matching[j], std::optional<std::size_t>(partner[j]));
  }
}

TEST(TemplateFitTest, NoisyCirculantWithinThreeSigma) {
  const int n = 8;
  const double sigma = 0.1;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TemplateFit fit =
        rf_template_fit(circulant(n, 3.0, -1.0) + gaussian(n, n, sigma, seed));
    EXPECT_NEAR(fit.w_max, 3.0, 3 * sigma / std::sqrt(n));
    EXPECT_NEAR(fit.w_min, -1.0, 3 * sigma / std::sqrt(n));
    EXPECT_GT(fit.rms_residual, 0.0);
    EXPECT_LT(fit.rms_residual, 2 * sigma);
  }
}

TEST(TemplateFitTest, NoiseHasLargeRelativeResidual) {
  const Eigen::MatrixXd w = gaussian(8, 8, 1.0, 5);
  const TemplateFit fit = rf_template_fit(w);
  EXPECT_GT(fit.rms_residual, 0.5 * std::abs(fit.w_max - fit.w_min));
}

TEST(TemplateFitTest, PartialOnCollisionAndErrors) {
  Eigen::MatrixXd w = circulant(4, 10.0, -1.0);
  w(0, 1) = 9.0;
  w(1, 1) = -1.0;
  EXPECT_TRUE(rf_template_fit(w).partial);
  EXPECT_THROW(rf_template_fit(Eigen::MatrixXd::Ones(3, 4)), DomainError);
  EXPECT_THROW(rf_template_fit(Eigen::MatrixXd()), DomainError);
}

}  // namespace
}  // namespace dicke
