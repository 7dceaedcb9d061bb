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

#include "dicke/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dicke/error.hpp"
#include "dicke/random.hpp"
#include "oracles.hpp"

namespace dicke {
namespace {

std::vector<double> to_vector(const StateVector& psi) {
  return {psi.amplitudes().begin(), psi.amplitudes().end()};
}

StateVector random_real_state(std::size_t n, Rng& rng) {
  std::vector<double> amps(std::size_t{1} << n);
  double norm = 0.0;
  for (double& a : amps) {
    a = 2.0 * rng.uniform() - 1.0;
    norm += a * a;
  }
  for (double& a : amps) a /= std::sqrt(norm);
  return StateVector(n, std::move(amps));
}

double expect(const StateVector& psi, std::vector<std::size_t> sites,
              std::string_view label) {
  return pauli_expectation(psi, PauliString::from_label(sites, label));
}

TEST(PauliExpectationTest, WStateExamples) {
  const StateVector w4 = StateVector::from_dicke(DickeState(4, 1));
  // Closed form 1 - 2D/N.
  EXPECT_NEAR(expect(w4, {0}, "z"), 0.5, 1e-15);
  // Closed form 2D(N-D) / (N(N-1)).
  EXPECT_NEAR(expect(w4, {0, 1}, "xx"), 0.5, 1e-15);
  EXPECT_NEAR(oracle::dense_pauli_expectation(to_vector(w4), 4, {0}, "z"), 0.5,
              1e-15);
  EXPECT_NEAR(oracle::dense_pauli_expectation(to_vector(w4), 4, {0, 1}, "xx"),
              0.5, 1e-15);
}

TEST(PauliExpectationTest, HalfFilledSixteenQubits) {
  const StateVector psi = StateVector::from_dicke(DickeState(16, 8));
  for (std::size_t site : {0u, 7u, 15u}) {
    EXPECT_NEAR(expect(psi, {site}, "z"), 0.0, 1e-15);
  }
  // 1 - 4 D (N - D) / (N (N - 1)) = -1/15, confirmed by the dense oracle.
  const double zz = expect(psi, {0, 1}, "zz");
  EXPECT_NEAR(oracle::dense_pauli_expectation(to_vector(psi), 16, {0, 1}, "zz"),
              -1.0 / 15.0, 1e-12);
  EXPECT_NEAR(zz, -1.0 / 15.0, 1e-12);
}

TEST(PauliExpectationTest, MatchesDenseOracleOnRandomStates) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = random_real_state(4, rng);
    for (const std::string& label : projection_labels(3)) {
      const std::vector<int> sites{2, 0, 3};
      const double dense =
          oracle::dense_pauli_expectation(to_vector(psi), 4, sites, label);
      EXPECT_NEAR(expect(psi, {2, 0, 3}, label), dense, 1e-12) << label;
    }
  }
}

TEST(PauliExpectationTest, OddYIsExactlyZero) {
  Rng rng(9);
  const StateVector psi = random_real_state(5, rng);
  for (const std::string& label : projection_labels(3)) {
    if (std::count(label.begin(), label.end(), 'y') % 2 == 1) {
      EXPECT_EQ(expect(psi, {0, 2, 4}, label), 0.0) << label;
    }
  }
}

TEST(PauliExpectationTest, SiteOutOfRange) {
  const StateVector psi = StateVector::zero_product(3);
  EXPECT_THROW(expect(psi, {3}, "z"), DomainError);
}

TEST(PauliStringTest, Validation) {
  EXPECT_THROW(PauliString({}), DomainError);
  EXPECT_THROW(PauliString({{2, Pauli::kX}, {1, Pauli::kZ}}), DomainError);
  const std::vector<std::size_t> five{0, 1, 2, 3, 4};
  EXPECT_THROW(PauliString::from_label(five, "xxxxx"), DomainError);
  const std::vector<std::size_t> rep{1, 1};
  EXPECT_THROW(PauliString::from_label(rep, "xz"), DomainError);
  const std::vector<std::size_t> two{3, 1};
  EXPECT_EQ(PauliString::from_label(two, "xz").label(), "zx");
  EXPECT_THROW(PauliString::from_label(two, "xq"), DomainError);
}

TEST(StateVectorTest, Guards) {
  EXPECT_THROW(StateVector(2, {1.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(StateVector(1, {1.0, 1.0}), DomainError);
  EXPECT_THROW(StateVector::from_dicke(DickeState(21, 1)), CapacityError);
}

TEST(UrsellTest, HalfFilledZzEqualsMoment) {
  const StateVector psi = StateVector::from_dicke(DickeState(16, 8));
  const std::vector<std::size_t> sites{0, 1};
  EXPECT_NEAR(ursell(psi, sites, "zz"), -1.0 / 15.0, 1e-12);
}

TEST(UrsellTest, ProductStateHasNoConnectedCorrelations) {
  const StateVector psi = StateVector::zero_product(6);
  for (std::size_t order = 2; order <= 4; ++order) {
    std::vector<std::size_t> sites(order);
    std::iota(sites.begin(), sites.end(), std::size_t{1});
    for (const std::string& label : projection_labels(order)) {
      EXPECT_NEAR(ursell(psi, sites, label), 0.0, 1e-15) << label;
    }
  }
}

double oracle_ursell(const StateVector& psi, const std::vector<std::size_t>& sites,
                     const std::string& label) {
  const std::vector<double> v = to_vector(psi);
  return oracle::cumulant_from_moments(
      static_cast<int>(sites.size()), [&](unsigned block) {
        std::vector<int> s;
        std::string l;
        for (std::size_t p = 0; p < sites.size(); ++p) {
          if (block & (1U << p)) {
            s.push_back(static_cast<int>(sites[p]));
            l.push_back(label[p]);
          }
        }
        return oracle::dense_pauli_expectation(v, static_cast<int>(psi.n_qubits()),
                                               s, l);
      });
}

TEST(UrsellTest, FourthOrderMatchesCumulantOracle) {
  const StateVector psi = StateVector::from_dicke(DickeState(16, 8));
  const std::vector<std::size_t> sites{0, 1, 2, 3};
  for (const std::string label : {"xxyy", "xxzz", "zzzz", "xyxy", "xxxx"}) {
    EXPECT_NEAR(ursell(psi, sites, label), oracle_ursell(psi, sites, label), 1e-12)
        << label;
  }
}

TEST(UrsellTest, LowOrdersMatchCumulantOracleOnRandomStates) {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const StateVector psi = random_real_state(3, rng);
    for (std::size_t order = 1; order <= 3; ++order) {
      std::vector<std::size_t> sites(order);
      std::iota(sites.begin(), sites.end(), std::size_t{0});
      std::reverse(sites.begin(), sites.end());
      for (const std::string& label : projection_labels(order)) {
        EXPECT_NEAR(ursell(psi, sites, label), oracle_ursell(psi, sites, label),
                    1e-10)
            << label;
      }
    }
  }
}

TEST(UrsellTest, FourthOrderSitePermutationInvariance) {
  const StateVector psi = StateVector::from_dicke(DickeState(10, 4));
  std::vector<std::size_t> sites{1, 4, 6, 9};
  const std::string label = "xxzz";
  const double base = ursell(psi, sites, label);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<std::size_t> s(4);
    std::string l(4, ' ');
    for (int k = 0; k < 4; ++k) {
      s[k] = sites[perm[k]];
      l[k] = label[perm[k]];
    }
    EXPECT_NEAR(ursell(psi, s, l), base, 1e-10);
  }
}

TEST(UrsellTest, RejectsRepeatedSitesAndBadOrder) {
  const StateVector psi = StateVector::zero_product(4);
  const std::vector<std::size_t> rep{0, 0};
  EXPECT_THROW(ursell(psi, rep, "xx"), DomainError);
  const std::vector<std::size_t> none;
  EXPECT_THROW(ursell(psi, none, ""), DomainError);
}

TEST(CorrelationHistogramTest, FirstOrderZOnlyAwayFromHalfFilling) {
  const auto r1 = correlation_histogram(DickeState(16, 1), 1);
  const auto r8 = correlation_histogram(DickeState(16, 8), 1);
  auto z_value = [](const CorrelationReport& r) {
    for (const auto& e : r.entries) {
      if (e.label == "z") return e.value;
    }
    return std::nan("");
  };
  EXPECT_NEAR(z_value(r1), 0.875, 1e-14);
  EXPECT_EQ(z_value(r8), 0.0);
  EXPECT_EQ(r8.zero_labels, (std::vector<std::string>{"x", "y", "z"}));
  ASSERT_EQ(r1.levels.size(), 1u);
  EXPECT_EQ(r1.levels[0].labels, std::vector<std::string>{"z"});
}

TEST(CorrelationHistogramTest, FerromagneticXxGrowsWithD) {
  double prev = -1.0;
  for (std::size_t d : {1u, 4u, 8u}) {
    const auto r = correlation_histogram(DickeState(16, d), 2);
    double xx = 0.0;
    for (const auto& e : r.entries) {
      if (e.label == "xx") xx = e.value;
    }
    EXPECT_GT(xx, prev) << "D=" << d;
    prev = xx;
    EXPECT_LT(r.max_symmetry_deviation, 1e-10);
  }
}

TEST(CorrelationHistogramTest, FourthOrderGrowsWithDAndMatchesPairScale) {
  double prev = 0.0;
  for (std::size_t d : {1u, 4u, 8u}) {
    const auto r4 = correlation_histogram(DickeState(16, d), 4, 17);
    double max4 = 0.0;
    for (const auto& e : r4.entries) max4 = std::max(max4, std::abs(e.value));
    EXPECT_GT(max4, prev) << "D=" << d;
    prev = max4;
    EXPECT_GE(r4.audited_tuples, 10u);
    EXPECT_LT(r4.max_symmetry_deviation, 1e-10);
    if (d == 8) {
      const auto r2 = correlation_histogram(DickeState(16, d), 2);
      double max2 = 0.0;
      for (const auto& e : r2.entries) max2 = std::max(max2, std::abs(e.value));
      EXPECT_GE(max4, 0.1 * max2);
    }
  }
}

TEST(CorrelationHistogramTest, Guards) {
  EXPECT_THROW(correlation_histogram(DickeState(8, 2), 5), DomainError);
  EXPECT_THROW(correlation_histogram(DickeState(8, 2), 0), DomainError);
  EXPECT_THROW(correlation_histogram(DickeState(22, 2), 2), CapacityError);
}

TEST(CorrelationExportTest, CsvAndJson) {
  const auto r = correlation_histogram(DickeState(6, 2), 2);
  std::ostringstream csv;
  write_correlation_csv(csv, r);
  const std::string text = csv.str();
  EXPECT_EQ(text.rfind("order,label,sites,value\n", 0), 0u);
  EXPECT_NE(text.find("2,xx,0-1,"), std::string::npos);
  const auto j = nlohmann::json::parse(correlation_summary_json(r));
  EXPECT_EQ(j["order"], 2);
  std::size_t total = j["zero_labels"].size();
  for (const auto& level : j["levels"]) total += level["multiplicity"].get<std::size_t>();
  EXPECT_EQ(total, 9u);
}

}  // namespace
}  // namespace dicke
