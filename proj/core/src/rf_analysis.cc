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
#include <string>

#include "dicke/error.hpp"

namespace dicke {
namespace {

using Eigen::Index;

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

HiddenUnitField analyze_unit(const Eigen::VectorXd& w, double eps) {
  const auto n = static_cast<std::size_t>(w.size());
  const double center = median(std::vector<double>(w.data(), w.data() + n));

  std::size_t dom = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double di = std::abs(w(static_cast<Index>(i)) - center);
    const double dd = std::abs(w(static_cast<Index>(dom)) - center);
    if (di > dd || (di == dd && std::abs(w(static_cast<Index>(i))) >
                                    std::abs(w(static_cast<Index>(dom))))) {
      dom = i;
    }
  }

  HiddenUnitField f;
  f.dominant_visible = dom;
  f.dominant_weight = w(static_cast<Index>(dom));
  if (n == 1) {
    f.separation = f.dominant_weight != 0.0 ? 1.0 : 0.0;
    f.score = f.separation;
    return f;
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != dom) sum += w(static_cast<Index>(i));
  }
  const double mu = sum / static_cast<double>(n - 1);
  double var = 0.0;
  double max_dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == dom) continue;
    const double dev = w(static_cast<Index>(i)) - mu;
    var += dev * dev;
    max_dev = std::max(max_dev, std::abs(dev));
  }
  f.residual_mean = mu;
  f.residual_stddev = std::sqrt(var / static_cast<double>(n - 1));

  const double lead = std::abs(f.dominant_weight - mu);
  f.separation = std::max(0.0, (lead - max_dev) / (lead + eps));
  f.score = f.separation * std::exp(-f.residual_stddev / (std::abs(mu) + eps));
  return f;
}

void require_usable(const Eigen::MatrixXd& weights, const char* where) {
  if (weights.size() == 0) {
    throw DomainError(std::string(where) + ": empty weight matrix");
  }
  if (!weights.allFinite()) {
    throw DomainError(std::string(where) + ": non-finite weight");
  }
}

}  // namespace

RfReport rf_score(const Eigen::MatrixXd& weights) {
  require_usable(weights, "rf_score");
  const auto m = static_cast<std::size_t>(weights.cols());

  const double largest = weights.cwiseAbs().maxCoeff();
  const double eps = kRfEpsilon * (largest > 0.0 ? largest : 1.0);

  RfReport report;
  report.units.reserve(m);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    report.units.push_back(analyze_unit(weights.col(static_cast<Index>(j)), eps));
    total += report.units.back().score;
  }
  report.global_score = std::clamp(total / static_cast<double>(m), 0.0, 1.0);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::abs(report.units[a].dominant_weight) >
                            std::abs(report.units[b].dominant_weight);
                   });
  std::vector<bool> taken(static_cast<std::size_t>(weights.rows()), false);
  report.matching.assign(m, std::nullopt);
  report.matching_complete = true;
  for (std::size_t j : order) {
    HiddenUnitField& u = report.units[j];
    if (taken[u.dominant_visible]) {
      u.collision = true;
      report.matching_complete = false;
    } else {
      taken[u.dominant_visible] = true;
      report.matching[j] = u.dominant_visible;
    }
  }
  return report;
}

TemplateFit rf_template_fit(const Eigen::MatrixXd& weights) {
  require_usable(weights, "rf_template_fit");
  if (weights.rows() != weights.cols()) {
    throw DomainError("rf_template_fit: weight matrix must be square");
  }
  const RfReport report = rf_score(weights);

  TemplateFit fit;
  fit.matching = report.matching;
  fit.partial = !report.matching_complete;

  double on_sum = 0.0;
  double off_sum = 0.0;
  std::size_t on_count = 0;
  std::size_t off_count = 0;
  for (Index j = 0; j < weights.cols(); ++j) {
    const auto& match = fit.matching[static_cast<std::size_t>(j)];
    for (Index i = 0; i < weights.rows(); ++i) {
      if (match && static_cast<Index>(*match) == i) {
        on_sum += weights(i, j);
        ++on_count;
      } else {
        off_sum += weights(i, j);
        ++off_count;
      }
    }
  }
  fit.w_max = on_count ? on_sum / static_cast<double>(on_count) : 0.0;
  fit.w_min = off_count ? off_sum / static_cast<double>(off_count) : 0.0;

  double sq = 0.0;
  for (Index j = 0; j < weights.cols(); ++j) {
    const auto& match = fit.matching[static_cast<std::size_t>(j)];
    for (Index i = 0; i < weights.rows(); ++i) {
      const double t =
          (match && static_cast<Index>(*match) == i) ? fit.w_max : fit.w_min;
      const double r = weights(i, j) - t;
      sq += r * r;
    }
  }
  fit.rms_residual = std::sqrt(sq / static_cast<double>(weights.size()));
  return fit;
}

}  // namespace dicke
