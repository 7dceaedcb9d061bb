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

// Global receptive-field detection in RBM weight matrices.
//
// A hidden unit has a global receptive field when one visible coupling
// stands out and all remaining couplings are nearly equal. The score below
// is a repo-defined metric (there is no standard one); per hidden unit j,
// column w = W[:, j]:
//
//   dominant i*  = argmax_i |w_i - median(w)|   (ties: larger |w_i|, then
//                                                lower i)
//   residuals R  = {w_i : i != i*}, mean mu, population stddev s
//   separation g = (|w_i* - mu| - max_{i != i*} |w_i - mu|)
//                  / (|w_i* - mu| + eps), clamped to >= 0
//   unit score   = g * exp(-s / (|mu| + eps))
//
// with eps = kRfEpsilon * max |W| (so the score ignores overall scale), and
// the global score is the mean unit score clamped to [0, 1]. An exact
// two-valued circulant scores 1; an all-zero column scores 0; i.i.d. noise
// scores near 0.

#ifndef DICKE_RF_ANALYSIS_HPP_
#define DICKE_RF_ANALYSIS_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace dicke {

inline constexpr double kRfEpsilon = 1e-9;
// Global score at or above which a matrix is said to carry global RFs.
inline constexpr double kGlobalRfThreshold = 0.5;

struct HiddenUnitField {
  std::size_t dominant_visible = 0;
  double dominant_weight = 0.0;  // signed
  double residual_mean = 0.0;
  double residual_stddev = 0.0;
  double separation = 0.0;
  double score = 0.0;
  // Another hidden unit with a larger |dominant weight| already claimed
  // dominant_visible in the matching.
  bool collision = false;
};

struct RfReport {
  std::vector<HiddenUnitField> units;
  double global_score = 0.0;
  // matching[j] = visible unit assigned to hidden unit j, empty on collision.
  std::vector<std::optional<std::size_t>> matching;
  bool matching_complete = false;

  bool global_rf_present() const { return global_score >= kGlobalRfThreshold; }
};

// Throws DomainError for an empty or non-finite matrix. Matching is greedy
// in order of decreasing |dominant weight| (ties by hidden index).
RfReport rf_score(const Eigen::MatrixXd& weights);

struct TemplateFit {
  double w_max = 0.0;
  double w_min = 0.0;
  std::vector<std::optional<std::size_t>> matching;
  double rms_residual = 0.0;
  // Some hidden units went unmatched; their columns were fit entirely by
  // w_min.
  bool partial = false;
};

// Least-squares fit of W to the two-parameter template T(i, j) = w_max if
// matching[j] == i else w_min, using the rf_score matching. The optimum is
// the mean of matched and of unmatched entries respectively. Throws
// DomainError unless W is square, nonempty and finite.
TemplateFit rf_template_fit(const Eigen::MatrixXd& weights);

}  // namespace dicke

#endif  // DICKE_RF_ANALYSIS_HPP_
