// Copyright 2026 The dicke-rbm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//      http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dicke/correlations.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dicke/error.hpp"
#include "dicke/parallel.hpp"
#include "dicke/random.hpp"

namespace dicke {

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'x':
    case 'X':
      return Pauli::kX;
    case 'y':
    case 'Y':
      return Pauli::kY;
    case 'z':
    case 'Z':
      return Pauli::kZ;
    default:
      throw DomainError(std::string("unknown Pauli projection '") + c + "'");
  }
}

PauliString::PauliString(std::vector<PauliTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty() || terms_.size() > kMaxCorrelationOrder) {
    throw DomainError("PauliString: length must be 1-4");
  }
  for (std::size_t k = 1; k < terms_.size(); ++k) {
    if (terms_[k].site <= terms_[k - 1].site) {
      throw DomainError("PauliString: sites must be strictly increasing");
    }
  }
}

PauliString PauliString::from_label(std::span<const std::size_t> sites,
                                    std::string_view projections) {
  if (sites.size() != projections.size()) {
    throw DomainError("PauliString: " + std::to_string(sites.size()) +
                      " sites but label '" + std::string(projections) + "'");
  }
  std::vector<PauliTerm> terms;
  terms.reserve(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    terms.push_back({sites[k], pauli_from_char(projections[k])});
  }
  std::sort(terms.begin(), terms.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.site < b.site; });
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (terms[k].site == terms[k - 1].site) {
      throw DomainError("PauliString: repeated site " +
                        std::to_string(terms[k].site));
    }
  }
  return PauliString(std::move(terms));
}

std::string PauliString::label() const {
  std::string s;
  for (const PauliTerm& t : terms_) s.push_back(static_cast<char>(t.op));
  return s;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<double> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits > kMaxStateVectorQubits) {
    throw CapacityError("StateVector: N=" + std::to_string(n_qubits) +
                        " exceeds guard N <= 20");
  }
  if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
    throw DomainError("StateVector: expected 2^N amplitudes");
  }
  double norm2 = 0.0;
  for (double a : amplitudes_) norm2 += a * a;
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw DomainError("StateVector: squared norm " + std::to_string(norm2) +
                      " is not 1");
  }
}

StateVector StateVector::from_dicke(const DickeState& state) {
  if (state.n_qubits() > kMaxStateVectorQubits) {
    throw CapacityError("StateVector: N=" + std::to_string(state.n_qubits()) +
                        " exceeds guard N <= 20");
  }
  std::vector<double> amps(std::size_t{1} << state.n_qubits(), 0.0);
  for (std::uint64_t mask : MaskRange(state.n_qubits(), state.dicke_index())) {
    amps[mask] = state.nonzero_amplitude();
  }
  return StateVector(state.n_qubits(), std::move(amps));
}

StateVector StateVector::zero_product(std::size_t n_qubits) {
  if (n_qubits > kMaxStateVectorQubits) {
    throw CapacityError("StateVector: N exceeds guard N <= 20");
  }
  std::vector<double> amps(std::size_t{1} << n_qubits, 0.0);
  amps[0] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

double pauli_expectation(const StateVector& psi, const PauliString& p) {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  int n_y = 0;
  for (const PauliTerm& t : p.terms()) {
    if (t.site >= psi.n_qubits()) {
      throw DomainError("pauli_expectation: site " + std::to_string(t.site) +
                        " out of range for N=" + std::to_string(psi.n_qubits()));
    }
    const std::uint64_t bit = std::uint64_t{1} << t.site;
    switch (t.op) {
      case Pauli::kX:
        flip |= bit;
        break;
      case Pauli::kY:
        flip |= bit;
        sign |= bit;
        ++n_y;
        break;
      case Pauli::kZ:
        sign |= bit;
        break;
    }
  }
  // i^{n_y} times a real sum: purely imaginary for odd n_y, so the Hermitian
  // expectation must vanish.
  if (n_y % 2 == 1) return 0.0;

  // Separate sums keep symmetric cancellations (e.g. <z> at half filling)
  // exactly zero.
  const auto amps = psi.amplitudes();
  double plus = 0.0;
  double minus = 0.0;
  for (std::uint64_t u = 0; u < amps.size(); ++u) {
    const double a = amps[u];
    if (a == 0.0) continue;
    const double b = amps[u ^ flip];
    if (b == 0.0) continue;
    ((std::popcount(u & sign) & 1) ? minus : plus) += a * b;
  }
  const double sum = plus - minus;
  return (n_y % 4 == 2) ? -sum : sum;
}

namespace {

// Moments of every nonempty subset of the tuple, indexed by subset bitmask
// over tuple positions.
std::array<double, 16> subset_moments(const StateVector& psi,
                                      std::span<const std::size_t> sites,
                                      std::string_view projections) {
  std::array<double, 16> m{};
  const std::size_t k = sites.size();
  std::vector<std::size_t> sub_sites;
  std::string sub_label;
  for (unsigned s = 1; s < (1U << k); ++s) {
    sub_sites.clear();
    sub_label.clear();
    for (std::size_t p = 0; p < k; ++p) {
      if (s & (1U << p)) {
        sub_sites.push_back(sites[p]);
        sub_label.push_back(projections[p]);
      }
    }
    m[s] = pauli_expectation(psi,
                             PauliString::from_label(sub_sites, sub_label));
  }
  return m;
}

}  // namespace

double ursell(const StateVector& psi, std::span<const std::size_t> sites,
              std::string_view projections) {
  const std::size_t k = sites.size();
  if (k == 0 || k > kMaxCorrelationOrder) {
    throw DomainError("ursell: order must be 1-4");
  }
  // Validates distinct sites, label length and projection characters.
  (void)PauliString::from_label(sites, projections);

  const auto m = subset_moments(psi, sites, projections);
  // Bits: i = 1, j = 2, k = 4, l = 8.
  switch (k) {
    case 1:
      return m[1];
    case 2:
      return m[3] - m[1] * m[2];
    case 3:
      return m[7] - m[1] * m[6] - m[2] * m[5] - m[4] * m[3] +
             2.0 * m[1] * m[2] * m[4];
    default:
      return m[15]
             - m[1] * m[14] - m[2] * m[13] - m[4] * m[11] - m[8] * m[7]
             - m[3] * m[12] - m[5] * m[10] - m[9] * m[6]
             + 2.0 * m[3] * m[4] * m[8] + 2.0 * m[5] * m[2] * m[8]
             + 2.0 * m[9] * m[2] * m[4] + 2.0 * m[6] * m[1] * m[8]
             + 2.0 * m[10] * m[1] * m[4] + 2.0 * m[12] * m[1] * m[2]
             - 6.0 * m[1] * m[2] * m[4] * m[8];
  }
}

std::vector<std::string> projection_labels(std::size_t order) {
  static constexpr char kOps[] = {'x', 'y', 'z'};
  std::vector<std::string> labels{""};
  for (std::size_t k = 0; k < order; ++k) {
    std::vector<std::string> next;
    next.reserve(labels.size() * 3);
    for (const auto& l : labels) {
      for (char c : kOps) next.push_back(l + c);
    }
    labels = std::move(next);
  }
  return labels;
}

CorrelationReport correlation_histogram(const DickeState& state,
                                        std::size_t order,
                                        std::uint64_t audit_seed,
                                        std::size_t audit_tuples) {
  if (order == 0 || order > kMaxCorrelationOrder) {
    throw DomainError("correlation_histogram: order must be 1-4, got " +
                      std::to_string(order));
  }
  if (state.n_qubits() > kMaxStateVectorQubits) {
    throw CapacityError("correlation_histogram: N=" +
                        std::to_string(state.n_qubits()) +
                        " exceeds guard N <= 20");
  }
  if (order > state.n_qubits()) {
    throw DomainError("correlation_histogram: order exceeds N");
  }
  const StateVector psi = StateVector::from_dicke(state);
  const std::vector<std::string> labels = projection_labels(order);

  CorrelationReport report;
  report.order = order;
  report.n_qubits = state.n_qubits();
  report.dicke_index = state.dicke_index();

  std::vector<std::size_t> rep(order);
  std::iota(rep.begin(), rep.end(), std::size_t{0});
  report.entries.resize(labels.size());
  parallel_for(labels.size(), [&](std::size_t i) {
    report.entries[i] = {labels[i], rep, ursell(psi, rep, labels[i])};
  });

  // Symmetry audit: random distinct sites in random order, same label.
  Rng rng(audit_seed);
  std::vector<std::size_t> pool(state.n_qubits());
  std::vector<std::vector<std::size_t>> tuples(audit_tuples);
  for (auto& t : tuples) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < order; ++i) {
      const std::size_t j =
          i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    t.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(order));
  }
  std::vector<double> deviation(tuples.size(), 0.0);
  parallel_for(tuples.size(), [&](std::size_t t) {
    for (const CorrelationEntry& e : report.entries) {
      const double v = ursell(psi, tuples[t], e.label);
      deviation[t] = std::max(deviation[t], std::abs(v - e.value));
    }
  });
  report.audited_tuples = tuples.size();
  for (double d : deviation) {
    report.max_symmetry_deviation = std::max(report.max_symmetry_deviation, d);
  }

  std::vector<const CorrelationEntry*> nonzero;
  for (const CorrelationEntry& e : report.entries) {
    if (std::abs(e.value) < kLevelMergeTolerance) {
      report.zero_labels.push_back(e.label);
    } else {
      nonzero.push_back(&e);
    }
  }
  std::stable_sort(nonzero.begin(), nonzero.end(),
                   [](const CorrelationEntry* a, const CorrelationEntry* b) {
                     return a->value > b->value;
                   });
  for (const CorrelationEntry* e : nonzero) {
    if (!report.levels.empty() &&
        std::abs(report.levels.back().value - e->value) < kLevelMergeTolerance) {
      report.levels.back().labels.push_back(e->label);
    } else {
      report.levels.push_back({e->value, {e->label}});
    }
  }
  return report;
}

void write_correlation_csv(std::ostream& out, const CorrelationReport& report) {
  out << "order,label,sites,value\n";
  char buf[64];
  for (const CorrelationEntry& e : report.entries) {
    std::string sites;
    for (std::size_t k = 0; k < e.sites.size(); ++k) {
      if (k) sites.push_back('-');
      sites += std::to_string(e.sites[k]);
    }
    // Adding +0.0 prints negative zero as 0.
    std::snprintf(buf, sizeof(buf), "%.17g", e.value + 0.0);
    out << report.order << ',' << e.label << ',' << sites << ',' << buf << '\n';
  }
  if (!out) throw IoError("write_correlation_csv: stream write failed");
}

std::string correlation_summary_json(const CorrelationReport& report) {
  nlohmann::json levels = nlohmann::json::array();
  for (const CorrelationLevel& l : report.levels) {
    levels.push_back({{"value", l.value},
                      {"multiplicity", l.labels.size()},
                      {"labels", l.labels}});
  }
  nlohmann::json j = {
      {"order", report.order},
      {"n_qubits", report.n_qubits},
      {"dicke_index", report.dicke_index},
      {"levels", levels},
      {"zero_labels", report.zero_labels},
      {"symmetry_audit",
       {{"tuples", report.audited_tuples},
        {"max_deviation", report.max_symmetry_deviation}}},
  };
  return j.dump(2);
}

}  // namespace dicke
