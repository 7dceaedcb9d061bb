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

#include "dicke/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "dicke/error.hpp"
#include "dicke/parallel.hpp"
#include "dicke/random.hpp"

namespace dicke {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::uint8_t b : bits_) {
    if (b > 1) throw DomainError("BitString: bit values must be 0 or 1");
  }
}

BitString BitString::from_mask(std::uint64_t mask, std::size_t n_qubits) {
  if (n_qubits > 64) throw DomainError("BitString::from_mask: N > 64");
  BitString out(n_qubits);
  for (std::size_t i = 0; i < n_qubits; ++i) out.bits_[i] = (mask >> i) & 1U;
  return out;
}

BitString BitString::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ' && c != '\t' && c != '\r') {
      throw ParseError("BitString: unexpected character '" +
                       std::string(1, c) + "'");
    }
  }
  return BitString(std::move(bits));
}

std::size_t BitString::hamming_weight() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::uint64_t BitString::to_mask() const {
  if (bits_.size() > 64) throw DomainError("BitString::to_mask: N > 64");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    mask |= static_cast<std::uint64_t>(bits_[i]) << i;
  }
  return mask;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

std::string BitString::to_spaced_string() const {
  std::string s;
  s.reserve(bits_.size() * 2);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i) s.push_back(' ');
    s.push_back(bits_[i] ? '1' : '0');
  }
  return s;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("log_binomial: require 0 <= k <= n, got n=" +
                      std::to_string(n) + " k=" + std::to_string(k));
  }
  if (k == 0 || k == n) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
         std::lgamma(nd - kd + 1.0);
}

DickeState::DickeState(std::size_t n_qubits, std::size_t dicke_index)
    : n_qubits_(n_qubits), dicke_index_(dicke_index) {
  if (n_qubits == 0) throw DomainError("DickeState: N must be positive");
  if (dicke_index > n_qubits) {
    throw DomainError("DickeState: require 0 <= D <= N, got N=" +
                      std::to_string(n_qubits) +
                      " D=" + std::to_string(dicke_index));
  }
  nonzero_amplitude_ = std::exp(
      -0.5 * log_binomial(static_cast<std::int64_t>(n_qubits),
                          static_cast<std::int64_t>(dicke_index)));
}

double dicke_amplitude(const DickeState& state, const BitString& v) {
  if (v.size() != state.n_qubits()) {
    throw DomainError("dicke_amplitude: bitstring length " +
                      std::to_string(v.size()) + " != N=" +
                      std::to_string(state.n_qubits()));
  }
  return v.hamming_weight() == state.dicke_index() ? state.nonzero_amplitude()
                                                   : 0.0;
}

SampleSet sample_measurements(const DickeState& state, std::size_t count,
                              std::uint64_t seed) {
  if (count == 0) throw DomainError("sample_measurements: count must be >= 1");
  const std::size_t n = state.n_qubits();
  const std::size_t d = state.dicke_index();

  SampleSet out;
  out.n_qubits = n;
  out.seed = seed;
  out.source = "dicke(N=" + std::to_string(n) + ",D=" + std::to_string(d) + ")";
  out.samples.assign(count, BitString(n));

  const std::size_t chunks = (count + kSampleChunkSize - 1) / kSampleChunkSize;
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(mix_seed(seed, c));
    std::vector<std::size_t> positions(n);
    const std::size_t lo = c * kSampleChunkSize;
    const std::size_t hi = std::min(count, lo + kSampleChunkSize);
    for (std::size_t s = lo; s < hi; ++s) {
      std::iota(positions.begin(), positions.end(), std::size_t{0});
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(positions[i], positions[j]);
      }
      BitString& v = out.samples[s];
      for (std::size_t i = 0; i < d; ++i) v.set(positions[i], true);
    }
  });
  return out;
}

MaskRange::MaskRange(std::size_t n_qubits, std::optional<std::size_t> weight)
    : n_qubits_(n_qubits), weight_(weight) {
  if (weight) {
    if (*weight > n_qubits) {
      throw DomainError("enumerate_basis: weight exceeds N");
    }
    if (n_qubits > kMaxMaskQubits) {
      throw CapacityError("enumerate_basis: weight-filtered enumeration "
                          "supports N <= 63");
    }
    count_ = static_cast<std::uint64_t>(std::llround(
        std::exp(log_binomial(static_cast<std::int64_t>(n_qubits),
                              static_cast<std::int64_t>(*weight)))));
  } else {
    if (n_qubits > kMaxEnumerationQubits) {
      throw CapacityError("enumerate_basis: unfiltered enumeration of N=" +
                          std::to_string(n_qubits) + " exceeds guard N <= 24");
    }
    count_ = std::uint64_t{1} << n_qubits;
  }
}

MaskRange::iterator MaskRange::begin() const {
  if (!weight_) return {0, 0, false};
  const std::uint64_t first =
      *weight_ == 0 ? 0 : (~std::uint64_t{0} >> (64 - *weight_));
  return {first, 0, true};
}

MaskRange::iterator MaskRange::end() const { return {0, count_, weight_.has_value()}; }

MaskRange::iterator& MaskRange::iterator::operator++() {
  ++index_;
  if (!filtered_) {
    mask_ = index_;
  } else if (mask_ != 0) {
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t c = mask_ & (~mask_ + 1);
    const std::uint64_t r = mask_ + c;
    mask_ = (((r ^ mask_) >> 2) / c) | r;
  }
  return *this;
}

BasisRange enumerate_basis(std::size_t n_qubits,
                           std::optional<std::size_t> weight) {
  return BasisRange(MaskRange(n_qubits, weight));
}

void write_samples(std::ostream& out, const SampleSet& samples) {
  for (const BitString& v : samples.samples) {
    out << v.to_spaced_string() << '\n';
  }
  if (!out) throw IoError("write_samples: stream write failed");
}

SampleSet read_samples(std::istream& in) {
  SampleSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    BitString v;
    try {
      v = BitString::parse(line);
    } catch (const ParseError& e) {
      throw ParseError("sample file line " + std::to_string(line_no) + ": " +
                       e.what());
    }
    if (out.samples.empty()) {
      out.n_qubits = v.size();
    } else if (v.size() != out.n_qubits) {
      throw ParseError("sample file line " + std::to_string(line_no) +
                       ": expected " + std::to_string(out.n_qubits) +
                       " bits, found " + std::to_string(v.size()));
    }
    out.samples.push_back(std::move(v));
  }
  if (out.samples.empty()) throw ParseError("sample file: no samples");
  return out;
}

}  // namespace dicke
