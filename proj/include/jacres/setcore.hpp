// Copyright 2026 The jacres Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jacres {

inline constexpr std::size_t kDefaultEnumerationLimit = 24;
// Power-set enumeration encodes masks as 64-bit integers.
inline constexpr std::size_t kHardEnumerationLimit = 40;

constexpr std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

// The finite universe X. Elements are indexed 0..n-1; labels are optional and
// only used when subsets are built from tokens.
class GroundSet {
 public:
  explicit GroundSet(std::size_t n);
  explicit GroundSet(std::vector<std::string> labels);

  std::size_t size() const { return n_; }
  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.n_ == b.n_ && a.labels_ == b.labels_; }

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

// A subset of X packed into 64-bit words; bit x of word x/64 is element x.
// Bits at positions >= n are always zero.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t n) : n_(n), words_(word_count(n), 0) {}

  static SubsetMask empty(std::size_t n) { return SubsetMask(n); }
  static SubsetMask full(std::size_t n);
  static SubsetMask singleton(std::size_t n, std::size_t x);
  static SubsetMask from_elements(std::size_t n, std::span<const std::size_t> elements);
  static SubsetMask from_elements(std::size_t n, std::initializer_list<std::size_t> elements) {
    return from_elements(n, std::span<const std::size_t>(elements.begin(), elements.size()));
  }
  // Integer encoding: element x is bit x. Requires n <= 64.
  static SubsetMask from_bits(std::size_t n, std::uint64_t bits);
  static SubsetMask from_words(std::size_t n, std::vector<std::uint64_t> words);

  std::size_t dimension() const { return n_; }
  std::size_t cardinality() const;
  bool is_empty() const;
  bool contains(std::size_t x) const;
  std::vector<std::size_t> elements() const;
  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t to_bits() const;

  SubsetMask complement() const;
  SubsetMask union_with(const SubsetMask& other) const;
  SubsetMask intersection(const SubsetMask& other) const;
  SubsetMask symmetric_difference(const SubsetMask& other) const;
  SubsetMask difference(const SubsetMask& other) const;
  bool is_subset_of(const SubsetMask& other) const;

  friend SubsetMask operator|(const SubsetMask& a, const SubsetMask& b) { return a.union_with(b); }
  friend SubsetMask operator&(const SubsetMask& a, const SubsetMask& b) { return a.intersection(b); }
  friend SubsetMask operator^(const SubsetMask& a, const SubsetMask& b) { return a.symmetric_difference(b); }
  SubsetMask operator~() const { return complement(); }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) = default;
  // Orders by dimension, then by integer encoding.
  friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b);

  // "{0,3,5}"
  std::string to_string() const;

 private:
  void check_same(const SubsetMask& other) const;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& m) const noexcept;
};

// A Jaccard distance as a reduced fraction num/den with 0 <= num <= den.
class RationalDistance {
 public:
  constexpr RationalDistance() = default;
  RationalDistance(std::uint32_t num, std::uint32_t den);

  // Reduces |a xor b| / |a or b|; 0/1 when the union is empty.
  static RationalDistance from_counts(std::uint64_t symmetric_difference, std::uint64_t union_size);

  std::uint32_t num() const { return num_; }
  std::uint32_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }
  std::uint64_t packed() const { return (static_cast<std::uint64_t>(num_) << 32) | den_; }

  friend bool operator==(const RationalDistance& a, const RationalDistance& b) = default;
  friend std::strong_ordering operator<=>(const RationalDistance& a, const RationalDistance& b) {
    return static_cast<std::uint64_t>(a.num_) * b.den_ <=> static_cast<std::uint64_t>(b.num_) * a.den_;
  }

 private:
  std::uint32_t num_ = 0;
  std::uint32_t den_ = 1;
};

RationalDistance jaccard(const SubsetMask& a, const SubsetMask& b);

// Jaccard distance from |a|, |b| and |a and b|.
RationalDistance jaccard_from_counts(std::uint64_t size_a, std::uint64_t size_b, std::uint64_t intersection);

// Lookup of reduced distance codes keyed by (|a xor b|, |a or b|), for inner
// loops that must not pay for a gcd. Codes are (num << 16) | den, so two
// codes are equal exactly when the distances are equal.
class DistanceCodeTable {
 public:
  explicit DistanceCodeTable(std::size_t n);

  std::uint32_t code(std::size_t symmetric_difference, std::size_t union_size) const {
    return codes_[symmetric_difference * stride_ + union_size];
  }
  std::uint32_t code_from_counts(std::size_t size_a, std::size_t size_b, std::size_t intersection) const {
    const std::size_t uni = size_a + size_b - intersection;
    return code(uni - intersection, uni);
  }
  static RationalDistance decode(std::uint32_t code) { return RationalDistance(code >> 16, code & 0xffffu); }

 private:
  std::size_t stride_;
  std::vector<std::uint32_t> codes_;
};

// mt19937_64 seeded with the raw 64-bit seed. The algorithm is part of the
// reproducibility contract of every experiment output.
class SeededGenerator {
 public:
  using result_type = std::uint64_t;

  explicit SeededGenerator(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  // Per-worker stream: seed XOR worker.
  SeededGenerator derive(std::uint64_t worker) const { return SeededGenerator(seed_ ^ worker); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Each word of the mask takes one generator output; bits past n are dropped.
SubsetMask sample_binomial_subset(const GroundSet& gs, SeededGenerator& rng);
SubsetMask sample_binomial_subset(std::size_t n, SeededGenerator& rng);

// All 2^n masks in ascending integer-encoding order.
class PowerSetRange {
 public:
  class iterator {
   public:
    using value_type = SubsetMask;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::size_t n, std::uint64_t bits) : n_(n), bits_(bits) {}

    SubsetMask operator*() const { return SubsetMask::from_bits(n_, bits_); }
    iterator& operator++() {
      ++bits_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++bits_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.bits_ == b.bits_; }

   private:
    std::size_t n_ = 0;
    std::uint64_t bits_ = 0;
  };

  explicit PowerSetRange(std::size_t n) : n_(n) {}

  iterator begin() const { return iterator(n_, 0); }
  iterator end() const { return iterator(n_, std::uint64_t{1} << n_); }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

 private:
  std::size_t n_;
};

// Throws ResourceError when n exceeds the limit.
PowerSetRange enumerate_power_set(const GroundSet& gs, std::size_t limit = kDefaultEnumerationLimit);

}  // namespace jacres
