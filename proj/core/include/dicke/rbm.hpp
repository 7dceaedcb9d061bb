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

// Positive RBM wave function psi(v) = sqrt(p(v)) with
//
//   p(v) = Z^-1 exp(sum_i a_i v_i) prod_j (1 + exp(b_j + sum_i W_ij v_i)),
//
// evaluated in log space. Exact normalization and fidelities enumerate the
// basis, so they are limited to N <= 24.

#ifndef DICKE_RBM_HPP_
#define DICKE_RBM_HPP_

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "dicke/random.hpp"
#include "dicke/state.hpp"

namespace dicke {

struct RbmParameters {
  RbmParameters() = default;
  // All-zero parameters.
  RbmParameters(std::size_t n_visible, std::size_t n_hidden);

  std::size_t n_visible() const {
    return static_cast<std::size_t>(weights.rows());
  }
  std::size_t n_hidden() const {
    return static_cast<std::size_t>(weights.cols());
  }

  // Throws DomainError on inconsistent shapes or non-finite entries.
  void validate() const;

  Eigen::MatrixXd weights;       // N x M, row = visible index
  Eigen::VectorXd visible_bias;  // a, length N
  Eigen::VectorXd hidden_bias;   // b, length M
};

// log p~(v) = sum_i a_i v_i + sum_j softplus(b_j + sum_i W_ij v_i).
// Throws DomainError on length mismatch.
double log_unnormalized_probability(const RbmParameters& rbm,
                                    const BitString& v);
// Mask form for hot loops; bit i <-> visible unit i.
double log_unnormalized_probability(const RbmParameters& rbm,
                                    std::uint64_t mask);

// log Z by streaming log-sum-exp over all 2^N visible configurations.
// Throws CapacityError for N > 24.
double partition_function(const RbmParameters& rbm);

// exp((log p~(v) - log_z) / 2). log_z must come from partition_function on
// the same parameters; a stale value cannot be detected here.
double amplitude(const RbmParameters& rbm, const BitString& v, double log_z);

// |<Psi^D_N|Psi_rbm>|^2 for the real non-negative RBM state, in log space.
// Throws DomainError when N differs, CapacityError for N > 24.
double fidelity_exact(const RbmParameters& rbm, const DickeState& target);
double fidelity_exact(const RbmParameters& rbm, const DickeState& target,
                      double log_z);

// One block Gibbs sweep v -> h -> v'.
BitString gibbs_step(const RbmParameters& rbm, const BitString& v, Rng& rng);

}  // namespace dicke

#endif  // DICKE_RBM_HPP_
