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

#include "dicke/rbm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dicke/error.hpp"
#include "dicke/numeric.hpp"

namespace dicke {
namespace {

// Gray-code enumeration accumulates theta incrementally; recompute it from
// scratch this often to bound rounding drift.
constexpr std::uint64_t kGrayResyncPeriod = 4096;

void require_length(const RbmParameters& rbm, std::size_t n,
                    const char* where) {
  if (n != rbm.n_visible()) {
    throw DomainError(std::string(where) + ": bitstring length " +
                      std::to_string(n) + " != n_visible " +
                      std::to_string(rbm.n_visible()));
  }
}

void require_enumerable(const RbmParameters& rbm, const char* where) {
  if (rbm.n_visible() > kMaxEnumerationQubits) {
    throw CapacityError(std::string(where) + ": N=" +
                        std::to_string(rbm.n_visible()) +
                        " exceeds enumeration guard N <= 24");
  }
}

}  // namespace

RbmParameters::RbmParameters(std::size_t n_visible, std::size_t n_hidden)
    : weights(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_visible),
                                    static_cast<Eigen::Index>(n_hidden))),
      visible_bias(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_visible))),
      hidden_bias(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_hidden))) {}

void RbmParameters::validate() const {
  if (visible_bias.size() != weights.rows() ||
      hidden_bias.size() != weights.cols()) {
    throw DomainError("RbmParameters: W is " + std::to_string(weights.rows()) +
                      "x" + std::to_string(weights.cols()) + " but a has " +
                      std::to_string(visible_bias.size()) + " and b has " +
                      std::to_string(hidden_bias.size()) + " entries");
  }
  if (!weights.allFinite() || !visible_bias.allFinite() ||
      !hidden_bias.allFinite()) {
    throw DomainError("RbmParameters: non-finite entry");
  }
}

double log_unnormalized_probability(const RbmParameters& rbm,
                                    const BitString& v) {
  require_length(rbm, v.size(), "log_unnormalized_probability");
  double linear = 0.0;
  Eigen::VectorXd theta = rbm.hidden_bias;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    const auto row = static_cast<Eigen::Index>(i);
    linear += rbm.visible_bias(row);
    theta += rbm.weights.row(row).transpose();
  }
  double sum = linear;
  for (Eigen::Index j = 0; j < theta.size(); ++j) sum += softplus(theta(j));
  return sum;
}

double log_unnormalized_probability(const RbmParameters& rbm,
                                    std::uint64_t mask) {
  double linear = 0.0;
  Eigen::VectorXd theta = rbm.hidden_bias;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const auto row = static_cast<Eigen::Index>(std::countr_zero(m));
    linear += rbm.visible_bias(row);
    theta += rbm.weights.row(row).transpose();
  }
  double sum = linear;
  for (Eigen::Index j = 0; j < theta.size(); ++j) sum += softplus(theta(j));
  return sum;
}

double partition_function(const RbmParameters& rbm) {
  require_enumerable(rbm, "partition_function");
  const std::size_t n = rbm.n_visible();
  const std::uint64_t total = std::uint64_t{1} << n;

  LogSumExp acc;
  Eigen::VectorXd theta = rbm.hidden_bias;
  double linear = 0.0;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 0; k < total; ++k) {
    if (k != 0) {
      const int bit = std::countr_zero(k);
      const auto row = static_cast<Eigen::Index>(bit);
      gray ^= std::uint64_t{1} << bit;
      if (k % kGrayResyncPeriod == 0) {
        theta = rbm.hidden_bias;
        linear = 0.0;
        for (std::uint64_t m = gray; m != 0; m &= m - 1) {
          const auto r = static_cast<Eigen::Index>(std::countr_zero(m));
          theta += rbm.weights.row(r).transpose();
          linear += rbm.visible_bias(r);
        }
      } else if (gray & (std::uint64_t{1} << bit)) {
        theta += rbm.weights.row(row).transpose();
        linear += rbm.visible_bias(row);
      } else {
        theta -= rbm.weights.row(row).transpose();
        linear -= rbm.visible_bias(row);
      }
    }
    double log_p = linear;
    for (Eigen::Index j = 0; j < theta.size(); ++j) log_p += softplus(theta(j));
    acc.add(log_p);
  }
  return acc.value();
}

double amplitude(const RbmParameters& rbm, const BitString& v, double log_z) {
  return std::exp(0.5 * (log_unnormalized_probability(rbm, v) - log_z));
}

double fidelity_exact(const RbmParameters& rbm, const DickeState& target) {
  return fidelity_exact(rbm, target, partition_function(rbm));
}

double fidelity_exact(const RbmParameters& rbm, const DickeState& target,
                      double log_z) {
  require_length(rbm, target.n_qubits(), "fidelity_exact");
  require_enumerable(rbm, "fidelity_exact");
  LogSumExp overlap;
  for (std::uint64_t mask : MaskRange(target.n_qubits(), target.dicke_index())) {
    overlap.add(0.5 * log_unnormalized_probability(rbm, mask));
  }
  const double log_f =
      2.0 * overlap.value() -
      log_binomial(static_cast<std::int64_t>(target.n_qubits()),
                   static_cast<std::int64_t>(target.dicke_index())) -
      log_z;
  return std::clamp(std::exp(log_f), 0.0, 1.0);
}

BitString gibbs_step(const RbmParameters& rbm, const BitString& v, Rng& rng) {
  require_length(rbm, v.size(), "gibbs_step");
  const std::size_t n = rbm.n_visible();
  const std::size_t m = rbm.n_hidden();

  Eigen::VectorXd theta = rbm.hidden_bias;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i]) theta += rbm.weights.row(static_cast<Eigen::Index>(i)).transpose();
  }
  Eigen::VectorXd field = rbm.visible_bias;
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    if (rng.bernoulli(sigmoid(theta(col)))) field += rbm.weights.col(col);
  }
  BitString out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, rng.bernoulli(sigmoid(field(static_cast<Eigen::Index>(i)))));
  }
  return out;
}

}  // namespace dicke
