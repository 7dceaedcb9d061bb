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

// Pauli-string expectation values on real state vectors and connected
// (Ursell) correlation functions of orders 1-4.
//
// Conventions: sigma^z|0> = +|0>, sigma^x flips a bit, sigma^y|0> = i|1>,
// sigma^y|1> = -i|0>. Sites are 0-based.

#ifndef DICKE_CORRELATIONS_HPP_
#define DICKE_CORRELATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/state.hpp"

namespace dicke {

inline constexpr std::size_t kMaxStateVectorQubits = 20;
inline constexpr std::size_t kMaxCorrelationOrder = 4;
// Levels closer than this are merged in reports; |value| below it counts
// as zero.
inline constexpr double kLevelMergeTolerance = 1e-9;

enum class Pauli : char { kX = 'x', kY = 'y', kZ = 'z' };

Pauli pauli_from_char(char c);

struct PauliTerm {
  std::size_t site;
  Pauli op;
};

// 1-4 single-site Pauli factors on strictly increasing sites.
class PauliString {
 public:
  // Throws DomainError unless sites are strictly increasing and
  // 1 <= size <= 4.
  explicit PauliString(std::vector<PauliTerm> terms);

  // Pairs sites[k] with projections[k]; sites may come in any order but must
  // be distinct. Terms are stored sorted by site.
  static PauliString from_label(std::span<const std::size_t> sites,
                                std::string_view projections);

  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::string label() const;

 private:
  std::vector<PauliTerm> terms_;
};

// Real amplitudes over 2^N basis states; index bit i <-> site i.
class StateVector {
 public:
  // Throws CapacityError for N > 20 and DomainError if the size is not 2^N
  // or the squared norm differs from 1 by more than 1e-10.
  StateVector(std::size_t n_qubits, std::vector<double> amplitudes);

  static StateVector from_dicke(const DickeState& state);
  // |0...0>.
  static StateVector zero_product(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const double> amplitudes() const { return amplitudes_; }

 private:
  std::size_t n_qubits_;
  std::vector<double> amplitudes_;
};

// <psi|P|psi>. An odd number of y factors gives exactly 0 for a real state.
// Throws DomainError when a site is out of range.
double pauli_expectation(const StateVector& psi, const PauliString& p);

// Connected correlation of order sites.size() (1-4) for the projection label
// (one of x/y/z per site, paired positionally with sites). Throws
// DomainError for repeated sites or mismatched lengths.
double ursell(const StateVector& psi, std::span<const std::size_t> sites,
              std::string_view projections);

// All 3^order projection labels in lexicographic x < y < z order.
std::vector<std::string> projection_labels(std::size_t order);

struct CorrelationEntry {
  std::string label;
  std::vector<std::size_t> sites;
  double value = 0.0;
};

struct CorrelationLevel {
  double value = 0.0;
  // Labels sharing this level; multiplicity is labels.size().
  std::vector<std::string> labels;
};

struct CorrelationReport {
  std::size_t order = 0;
  std::size_t n_qubits = 0;
  std::size_t dicke_index = 0;
  // One entry per label at the representative tuple (0, 1, ..., order-1).
  std::vector<CorrelationEntry> entries;
  // Distinct nonzero levels, sorted by decreasing value.
  std::vector<CorrelationLevel> levels;
  // Labels whose correlation vanishes at every site tuple ("all" bucket).
  std::vector<std::string> zero_labels;
  // Site tuples checked against the representative values, and the largest
  // deviation seen.
  std::size_t audited_tuples = 0;
  double max_symmetry_deviation = 0.0;
};

// Evaluates every label of the given order on the Dicke state vector at the
// representative tuple, audits site-exchange symmetry over audit_tuples
// random distinct-site tuples, and groups values into levels. Throws
// CapacityError above N = 20 and DomainError unless 1 <= order <= 4 and
// order <= N.
CorrelationReport correlation_histogram(const DickeState& state,
                                        std::size_t order,
                                        std::uint64_t audit_seed = 0,
                                        std::size_t audit_tuples = 10);

// CSV columns: order,label,sites,value. Sites are joined with '-'.
void write_correlation_csv(std::ostream& out, const CorrelationReport& report);
// JSON summary of levels, multiplicities, zero labels and the audit result.
std::string correlation_summary_json(const CorrelationReport& report);

}  // namespace dicke

#endif  // DICKE_CORRELATIONS_HPP_
