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

// Exact Dicke states, bitstrings, basis enumeration and measurement sampling.
//
// Bit convention shared by every module: site i (0-based) of an N-qubit
// register is character i of the textual form (leftmost = site 0) and bit i
// of the integer mask (mask = sum_i v_i 2^i).

#ifndef DICKE_STATE_HPP_
#define DICKE_STATE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dicke {

// Largest N for which an unfiltered 2^N enumeration is allowed.
inline constexpr std::size_t kMaxEnumerationQubits = 24;
// Largest N representable as a 64-bit mask (used by weight-filtered
// enumeration).
inline constexpr std::size_t kMaxMaskQubits = 63;

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n_qubits) : bits_(n_qubits, 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString from_mask(std::uint64_t mask, std::size_t n_qubits);
  // Accepts "0101" or space-separated "0 1 0 1". Throws ParseError.
  static BitString parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

  std::size_t hamming_weight() const;
  // Requires size() <= 64.
  std::uint64_t to_mask() const;
  std::span<const std::uint8_t> bits() const { return bits_; }

  // Compact form, e.g. "0101".
  std::string to_string() const;
  // Sample-file form, e.g. "0 1 0 1".
  std::string to_spaced_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// ln C(n, k) via lgamma; never forms C(n, k). Throws DomainError unless
// 0 <= k <= n.
double log_binomial(std::int64_t n, std::int64_t k);

class DickeState {
 public:
  // Throws DomainError unless n_qubits >= 1 and 0 <= dicke_index <= n_qubits.
  DickeState(std::size_t n_qubits, std::size_t dicke_index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dicke_index() const { return dicke_index_; }
  // 1 / sqrt(C(N, D)).
  double nonzero_amplitude() const { return nonzero_amplitude_; }

  friend bool operator==(const DickeState&, const DickeState&) = default;

 private:
  std::size_t n_qubits_;
  std::size_t dicke_index_;
  double nonzero_amplitude_;
};

// <v|Psi^D_N>. Throws DomainError on length mismatch.
double dicke_amplitude(const DickeState& state, const BitString& v);

struct SampleSet {
  std::size_t n_qubits = 0;
  std::vector<BitString> samples;
  std::uint64_t seed = 0;
  std::string source;
};

// Samples per seeding chunk in sample_measurements. Chunk c is drawn from
// Rng(mix_seed(seed, c)), so the output does not depend on thread count.
inline constexpr std::size_t kSampleChunkSize = 4096;

// count i.i.d. projective measurements in the computational basis, i.e.
// uniform draws over the C(N, D) weight-D strings (partial Fisher-Yates over
// positions). Throws DomainError when count == 0.
SampleSet sample_measurements(const DickeState& state, std::size_t count,
                              std::uint64_t seed);

// Deterministic basis enumeration. Without a weight filter the masks run
// 0, 1, ..., 2^N - 1; with a filter they run over the weight-w masks in
// increasing numeric order (Gosper's successor).
class MaskRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    std::uint64_t operator*() const { return mask_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    friend class MaskRange;
    iterator(std::uint64_t mask, std::uint64_t index, bool filtered)
        : mask_(mask), index_(index), filtered_(filtered) {}
    std::uint64_t mask_ = 0;
    std::uint64_t index_ = 0;
    bool filtered_ = false;
  };

  // Throws CapacityError when unfiltered and n_qubits > 24, or filtered and
  // n_qubits > 63; DomainError when weight > n_qubits.
  MaskRange(std::size_t n_qubits, std::optional<std::size_t> weight);

  iterator begin() const;
  iterator end() const;
  std::uint64_t size() const { return count_; }
  std::size_t n_qubits() const { return n_qubits_; }

 private:
  std::size_t n_qubits_;
  std::optional<std::size_t> weight_;
  std::uint64_t count_;
};

// Same ordering as MaskRange, yielding BitString values.
class BasisRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = BitString;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    BitString operator*() const {
      return BitString::from_mask(*inner_, n_qubits_);
    }
    iterator& operator++() {
      ++inner_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++inner_;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.inner_ == b.inner_;
    }

   private:
    friend class BasisRange;
    iterator(MaskRange::iterator inner, std::size_t n)
        : inner_(inner), n_qubits_(n) {}
    MaskRange::iterator inner_;
    std::size_t n_qubits_ = 0;
  };

  explicit BasisRange(MaskRange masks) : masks_(masks) {}
  iterator begin() const { return {masks_.begin(), masks_.n_qubits()}; }
  iterator end() const { return {masks_.end(), masks_.n_qubits()}; }
  std::uint64_t size() const { return masks_.size(); }

 private:
  MaskRange masks_;
};

BasisRange enumerate_basis(std::size_t n_qubits,
                           std::optional<std::size_t> weight = std::nullopt);

// Sample file: one measurement per line, N tokens "0"/"1" separated by single
// spaces, newline-terminated.
void write_samples(std::ostream& out, const SampleSet& samples);
// Throws ParseError with the offending line number on malformed input or
// inconsistent line lengths.
SampleSet read_samples(std::istream& in);

}  // namespace dicke

#endif  // DICKE_STATE_HPP_
