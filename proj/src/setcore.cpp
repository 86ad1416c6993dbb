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

#include "jacres/setcore.hpp"

#include <algorithm>
#include <numeric>

#include "jacres/errors.hpp"

namespace jacres {
namespace {

std::uint64_t tail_mask(std::size_t n) {
  const std::size_t rem = n % 64;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

void clear_tail(std::vector<std::uint64_t>& words, std::size_t n) {
  if (!words.empty()) words.back() &= tail_mask(n);
}

}  // namespace

GroundSet::GroundSet(std::size_t n) : n_(n) {
  if (n == 0) throw ArgumentError("ground set must be non-empty");
}

GroundSet::GroundSet(std::vector<std::string> labels) : n_(labels.size()), labels_(std::move(labels)) {
  if (n_ == 0) throw ArgumentError("ground set must be non-empty");
  index_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw ArgumentError("duplicate ground-set label '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> GroundSet::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SubsetMask SubsetMask::full(std::size_t n) {
  SubsetMask m(n);
  std::fill(m.words_.begin(), m.words_.end(), ~std::uint64_t{0});
  clear_tail(m.words_, n);
  return m;
}

SubsetMask SubsetMask::singleton(std::size_t n, std::size_t x) {
  if (x >= n) throw ArgumentError("element " + std::to_string(x) + " outside ground set of size " + std::to_string(n));
  SubsetMask m(n);
  m.words_[x / 64] |= std::uint64_t{1} << (x % 64);
  return m;
}

SubsetMask SubsetMask::from_elements(std::size_t n, std::span<const std::size_t> elements) {
  SubsetMask m(n);
  for (std::size_t x : elements) {
    if (x >= n) throw ArgumentError("element " + std::to_string(x) + " outside ground set of size " + std::to_string(n));
    m.words_[x / 64] |= std::uint64_t{1} << (x % 64);
  }
  return m;
}

SubsetMask SubsetMask::from_bits(std::size_t n, std::uint64_t bits) {
  if (n > 64) throw DimensionError("from_bits requires n <= 64");
  if (n < 64 && (bits >> n) != 0) throw ArgumentError("bits set beyond ground-set size");
  SubsetMask m(n);
  if (n > 0) m.words_[0] = bits;
  return m;
}

SubsetMask SubsetMask::from_words(std::size_t n, std::vector<std::uint64_t> words) {
  if (words.size() != word_count(n)) throw DimensionError("word count does not match ground-set size");
  if (!words.empty() && (words.back() & ~tail_mask(n)) != 0) {
    throw ArgumentError("bits set beyond ground-set size");
  }
  SubsetMask m;
  m.n_ = n;
  m.words_ = std::move(words);
  return m;
}

std::size_t SubsetMask::cardinality() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool SubsetMask::is_empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool SubsetMask::contains(std::size_t x) const {
  if (x >= n_) return false;
  return (words_[x / 64] >> (x % 64)) & 1u;
}

std::vector<std::size_t> SubsetMask::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t SubsetMask::to_bits() const {
  if (n_ > 64) throw DimensionError("to_bits requires n <= 64");
  return words_.empty() ? 0 : words_[0];
}

void SubsetMask::check_same(const SubsetMask& other) const {
  if (n_ != other.n_) {
    throw DimensionError("masks over ground sets of size " + std::to_string(n_) + " and " +
                         std::to_string(other.n_));
  }
}

SubsetMask SubsetMask::complement() const {
  SubsetMask m(*this);
  for (auto& w : m.words_) w = ~w;
  clear_tail(m.words_, n_);
  return m;
}

SubsetMask SubsetMask::union_with(const SubsetMask& other) const {
  check_same(other);
  SubsetMask m(*this);
  for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] |= other.words_[i];
  return m;
}

SubsetMask SubsetMask::intersection(const SubsetMask& other) const {
  check_same(other);
  SubsetMask m(*this);
  for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] &= other.words_[i];
  return m;
}

SubsetMask SubsetMask::symmetric_difference(const SubsetMask& other) const {
  check_same(other);
  SubsetMask m(*this);
  for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] ^= other.words_[i];
  return m;
}

SubsetMask SubsetMask::difference(const SubsetMask& other) const {
  check_same(other);
  SubsetMask m(*this);
  for (std::size_t i = 0; i < m.words_.size(); ++i) m.words_[i] &= ~other.words_[i];
  return m;
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
  check_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string SubsetMask::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto x : elements()) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  }
  out += '}';
  return out;
}

std::size_t SubsetMaskHash::operator()(const SubsetMask& m) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ m.dimension();
  for (auto w : m.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

RationalDistance::RationalDistance(std::uint32_t num, std::uint32_t den) : num_(num), den_(den) {
  if (den == 0 || num > den || std::gcd(num, den) != 1) {
    throw ArgumentError("distance " + std::to_string(num) + "/" + std::to_string(den) +
                        " is not a reduced fraction in [0,1]");
  }
}

RationalDistance RationalDistance::from_counts(std::uint64_t symmetric_difference, std::uint64_t union_size) {
  if (union_size == 0) return RationalDistance();
  const auto g = std::gcd(symmetric_difference, union_size);
  RationalDistance d;
  d.num_ = static_cast<std::uint32_t>(symmetric_difference / g);
  d.den_ = static_cast<std::uint32_t>(union_size / g);
  return d;
}

RationalDistance jaccard(const SubsetMask& a, const SubsetMask& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError("jaccard of masks over ground sets of size " + std::to_string(a.dimension()) + " and " +
                         std::to_string(b.dimension()));
  }
  std::uint64_t sym = 0;
  std::uint64_t uni = 0;
  auto wa = a.words();
  auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    sym += static_cast<std::uint64_t>(std::popcount(wa[i] ^ wb[i]));
    uni += static_cast<std::uint64_t>(std::popcount(wa[i] | wb[i]));
  }
  return RationalDistance::from_counts(sym, uni);
}

RationalDistance jaccard_from_counts(std::uint64_t size_a, std::uint64_t size_b, std::uint64_t intersection) {
  if (intersection > size_a || intersection > size_b) throw ArgumentError("intersection larger than an operand");
  const auto uni = size_a + size_b - intersection;
  return RationalDistance::from_counts(uni - intersection, uni);
}

DistanceCodeTable::DistanceCodeTable(std::size_t n) : stride_(n + 1), codes_((n + 1) * (n + 1), 0) {
  if (n > 0xffff) throw ResourceError("distance code table supports n < 65536");
  for (std::size_t sym = 0; sym <= n; ++sym) {
    for (std::size_t uni = sym; uni <= n; ++uni) {
      const auto d = RationalDistance::from_counts(sym, uni);
      codes_[sym * stride_ + uni] = (d.num() << 16) | d.den();
    }
  }
}

SubsetMask sample_binomial_subset(std::size_t n, SeededGenerator& rng) {
  std::vector<std::uint64_t> words(word_count(n));
  for (auto& w : words) w = rng();
  clear_tail(words, n);
  return SubsetMask::from_words(n, std::move(words));
}

SubsetMask sample_binomial_subset(const GroundSet& gs, SeededGenerator& rng) {
  return sample_binomial_subset(gs.size(), rng);
}

PowerSetRange enumerate_power_set(const GroundSet& gs, std::size_t limit) {
  const auto cap = std::min(limit, kHardEnumerationLimit);
  if (gs.size() > cap) {
    throw ResourceError("power-set enumeration of n=" + std::to_string(gs.size()) + " exceeds the limit n<=" +
                        std::to_string(cap));
  }
  return PowerSetRange(gs.size());
}

}  // namespace jacres
