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

#include "jacres/resolve.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "jacres/errors.hpp"

namespace jacres {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturate(unsigned __int128 v) { return v > kSaturated ? kSaturated : static_cast<std::uint64_t>(v); }

unsigned __int128 pairs_of(std::uint64_t m) { return static_cast<unsigned __int128>(m) * (m == 0 ? 0 : m - 1) / 2; }

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

// 128-bit digest of a signature, accumulated one distance code at a time.
struct Digest {
  std::uint64_t h1 = 0x243f6a8885a308d3ull;
  std::uint64_t h2 = 0x13198a2e03707344ull;

  void add(std::uint32_t code) {
    h1 = (h1 ^ code) * 0x9e3779b97f4a7c15ull;
    h2 = (h2 + code) * 0xc2b2ae3d27d4eb4full;
    h2 ^= h2 >> 29;
  }
  void finish() {
    h1 = mix64(h1);
    h2 = mix64(h2 ^ (h1 >> 17));
  }
};

struct Entry {
  std::uint64_t d1;
  std::uint64_t d2;
  std::uint64_t index;
};

// The masks a run enumerates, indexed in ascending integer-encoding order.
class CandidatePool {
 public:
  // Full power set: index == integer encoding.
  explicit CandidatePool(std::size_t n) : n_(n), stride_(1), count_(std::uint64_t{1} << n), full_(true) {}

  CandidatePool(std::size_t n, std::vector<std::uint64_t> flat)
      : n_(n), stride_(word_count(n)), count_(flat.size() / word_count(n)), full_(false), flat_(std::move(flat)) {}

  std::size_t n() const { return n_; }
  std::size_t stride() const { return stride_; }
  std::uint64_t count() const { return count_; }
  bool full() const { return full_; }

  const std::uint64_t* words(std::uint64_t index, std::uint64_t& scratch) const {
    if (full_) {
      scratch = index;
      return &scratch;
    }
    return flat_.data() + index * stride_;
  }

  SubsetMask mask(std::uint64_t index) const {
    std::uint64_t scratch = 0;
    const auto* w = words(index, scratch);
    return SubsetMask::from_words(n_, std::vector<std::uint64_t>(w, w + stride_));
  }

  std::size_t cardinality(std::uint64_t index) const {
    std::uint64_t scratch = 0;
    const auto* w = words(index, scratch);
    std::size_t c = 0;
    for (std::size_t i = 0; i < stride_; ++i) c += static_cast<std::size_t>(std::popcount(w[i]));
    return c;
  }

 private:
  std::size_t n_;
  std::size_t stride_;
  std::uint64_t count_;
  bool full_;
  std::vector<std::uint64_t> flat_;
};

unsigned __int128 count_small_subsets(std::size_t n, std::size_t W) {
  unsigned __int128 total = 0;
  unsigned __int128 binom = 1;
  for (std::size_t k = 0; k <= W; ++k) {
    total += binom;
    if (total > (static_cast<unsigned __int128>(1) << 100)) return total;
    binom = binom * (n - k) / (k + 1);
  }
  return total;
}

CandidatePool small_subset_pool(std::size_t n, std::size_t W) {
  const std::size_t stride = word_count(n);
  std::vector<std::vector<std::uint64_t>> masks;
  std::vector<std::size_t> pick;
  std::vector<std::uint64_t> current(stride, 0);
  masks.push_back(current);
  // Depth-first over increasing element indices.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == W) return;
    for (std::size_t x = start; x < n; ++x) {
      current[x / 64] |= std::uint64_t{1} << (x % 64);
      pick.push_back(x);
      masks.push_back(current);
      self(self, x + 1);
      pick.pop_back();
      current[x / 64] &= ~(std::uint64_t{1} << (x % 64));
    }
  };
  recurse(recurse, 0);
  std::sort(masks.begin(), masks.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  std::vector<std::uint64_t> flat;
  flat.reserve(masks.size() * stride);
  for (const auto& m : masks) flat.insert(flat.end(), m.begin(), m.end());
  return CandidatePool(n, std::move(flat));
}

struct LandmarkTable {
  std::size_t count = 0;
  std::size_t stride = 1;
  std::vector<std::uint64_t> words;
  std::vector<std::size_t> sizes;
};

LandmarkTable make_landmark_table(std::span<const SubsetMask> landmarks) {
  LandmarkTable t;
  t.count = landmarks.size();
  t.stride = word_count(landmarks.front().dimension());
  for (const auto& r : landmarks) {
    t.words.insert(t.words.end(), r.words().begin(), r.words().end());
    t.sizes.push_back(r.cardinality());
  }
  return t;
}

void signature_codes(const CandidatePool& pool, const LandmarkTable& lt, const DistanceCodeTable& codes,
                     std::uint64_t index, std::vector<std::uint32_t>& out) {
  std::uint64_t scratch = 0;
  const auto* w = pool.words(index, scratch);
  const std::size_t card = pool.cardinality(index);
  out.resize(lt.count);
  for (std::size_t l = 0; l < lt.count; ++l) {
    const auto* r = lt.words.data() + l * lt.stride;
    std::size_t inter = 0;
    for (std::size_t i = 0; i < lt.stride; ++i) inter += static_cast<std::size_t>(std::popcount(w[i] & r[i]));
    out[l] = codes.code_from_counts(card, lt.sizes[l], inter);
  }
}

void fill_entries(const CandidatePool& pool, const LandmarkTable& lt, const DistanceCodeTable& codes,
                  std::vector<Entry>& entries, std::uint64_t begin, std::uint64_t end) {
  if (pool.full()) {
    // Hot path: single-word masks equal to their index.
    const auto* r = lt.words.data();
    for (std::uint64_t a = begin; a < end; ++a) {
      const auto card = static_cast<std::size_t>(std::popcount(a));
      Digest d;
      for (std::size_t l = 0; l < lt.count; ++l) {
        const auto inter = static_cast<std::size_t>(std::popcount(a & r[l]));
        d.add(codes.code_from_counts(card, lt.sizes[l], inter));
      }
      d.finish();
      entries[a] = Entry{d.h1, d.h2, a};
    }
    return;
  }
  std::vector<std::uint32_t> sig;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    signature_codes(pool, lt, codes, idx, sig);
    Digest d;
    for (auto c : sig) d.add(c);
    d.finish();
    entries[idx] = Entry{d.h1, d.h2, idx};
  }
}

using IndexPair = std::pair<std::uint64_t, std::uint64_t>;

// Least (a, b), a < b, within one class of exactly equal signatures.
std::optional<IndexPair> least_pair_in_class(const CandidatePool& pool, Scope scope,
                                             std::span<const std::uint64_t> members) {
  if (members.size() < 2) return std::nullopt;
  if (scope == Scope::all_pairs || scope == Scope::size_at_most_W) return IndexPair{members[0], members[1]};
  std::vector<std::size_t> cards(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) cards[i] = pool.cardinality(members[i]);
  const bool want_equal = scope == Scope::equal_size_only;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if ((cards[i] == cards[j]) == want_equal) return IndexPair{members[i], members[j]};
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Scope scope) {
  switch (scope) {
    case Scope::all_pairs:
      return "all_pairs";
    case Scope::equal_size_only:
      return "equal_size_only";
    case Scope::different_size_only:
      return "different_size_only";
    case Scope::size_at_most_W:
      return "size_at_most_W";
  }
  return "unknown";
}

Scope parse_scope(std::string_view text) {
  for (auto s : {Scope::all_pairs, Scope::equal_size_only, Scope::different_size_only, Scope::size_at_most_W}) {
    if (text == to_string(s)) return s;
  }
  throw ArgumentError("unknown scope '" + std::string(text) + "'");
}

bool in_scope(Scope scope, const SubsetMask& a, const SubsetMask& b, std::optional<std::size_t> W) {
  if (a == b) return false;
  switch (scope) {
    case Scope::all_pairs:
      return true;
    case Scope::equal_size_only:
      return a.cardinality() == b.cardinality();
    case Scope::different_size_only:
      return a.cardinality() != b.cardinality();
    case Scope::size_at_most_W:
      if (!W) throw ArgumentError("scope size_at_most_W requires W");
      return a.cardinality() <= *W && b.cardinality() <= *W;
  }
  return false;
}

std::size_t SignatureHash::operator()(const Signature& s) const noexcept {
  Digest d;
  for (const auto& c : s.coords) {
    d.add(c.num());
    d.add(c.den());
  }
  d.finish();
  return static_cast<std::size_t>(d.h1);
}

Signature signature(const SubsetMask& a, std::span<const SubsetMask> landmarks) {
  if (landmarks.empty()) throw ArgumentError("signature requires a non-empty landmark list");
  Signature s;
  s.coords.reserve(landmarks.size());
  for (const auto& r : landmarks) s.coords.push_back(jaccard(a, r));
  return s;
}

ResolutionReport verify_resolving(std::span<const SubsetMask> landmarks, const VerifyOptions& options) {
  if (landmarks.empty()) throw ArgumentError("landmark list must be non-empty");
  const std::size_t n = landmarks.front().dimension();
  if (n == 0) throw ArgumentError("landmarks over an empty ground set");
  for (const auto& r : landmarks) {
    if (r.dimension() != n) throw DimensionError("landmarks over ground sets of different sizes");
  }

  ResolutionReport report;
  report.scope = options.scope;
  report.W = options.W;

  const std::size_t limit = std::min(options.enumeration_limit, kHardEnumerationLimit);
  std::optional<CandidatePool> pool;
  if (options.scope == Scope::size_at_most_W) {
    if (!options.W) throw ArgumentError("scope size_at_most_W requires W");
    if (*options.W > n) throw ArgumentError("W=" + std::to_string(*options.W) + " exceeds n=" + std::to_string(n));
    const auto count = count_small_subsets(n, *options.W);
    if (count > (static_cast<unsigned __int128>(1) << limit)) {
      throw ResourceError("size_at_most_W enumeration at n=" + std::to_string(n) + ", W=" +
                          std::to_string(*options.W) + " exceeds 2^" + std::to_string(limit) + " masks");
    }
    pool.emplace(small_subset_pool(n, *options.W));
  } else {
    if (n > limit) {
      throw ResourceError("exhaustive verification at n=" + std::to_string(n) + " exceeds the limit n<=" +
                          std::to_string(limit));
    }
    pool.emplace(n);
  }

  const LandmarkTable lt = make_landmark_table(landmarks);
  const DistanceCodeTable codes(n);
  const std::uint64_t count = pool->count();
  report.masks_enumerated = count;

  std::vector<Entry> entries(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(options.workers, count));
  if (workers == 1) {
    fill_entries(*pool, lt, codes, entries, 0, count);
  } else {
    std::vector<std::jthread> threads;
    const std::uint64_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(count, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(count, begin + chunk);
      threads.emplace_back([&, begin, end] { fill_entries(*pool, lt, codes, entries, begin, end); });
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.d1 != y.d1) return x.d1 < y.d1;
    if (x.d2 != y.d2) return x.d2 < y.d2;
    return x.index < y.index;
  });

  std::optional<IndexPair> best;
  std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> group;
  std::vector<std::uint64_t> members;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i + 1;
    while (j < entries.size() && entries[j].d1 == entries[i].d1 && entries[j].d2 == entries[i].d2) ++j;
    if (j - i >= 2) {
      // Equal digests: split into classes of exactly equal signatures.
      group.clear();
      for (std::size_t k = i; k < j; ++k) {
        std::vector<std::uint32_t> sig;
        signature_codes(*pool, lt, codes, entries[k].index, sig);
        group.emplace_back(std::move(sig), entries[k].index);
      }
      std::sort(group.begin(), group.end());
      for (std::size_t g = 0; g < group.size();) {
        std::size_t h = g + 1;
        while (h < group.size() && group[h].first == group[g].first) ++h;
        members.clear();
        for (std::size_t k = g; k < h; ++k) members.push_back(group[k].second);
        if (auto p = least_pair_in_class(*pool, options.scope, members); p && (!best || *p < *best)) best = p;
        g = h;
      }
    }
    i = j;
  }

  std::vector<std::uint64_t> per_size(n + 1, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) ++per_size[pool->cardinality(idx)];
  unsigned __int128 equal_pairs = 0;
  for (auto c : per_size) equal_pairs += pairs_of(c);
  const unsigned __int128 all = pairs_of(count);
  switch (options.scope) {
    case Scope::all_pairs:
    case Scope::size_at_most_W:
      report.pairs_checked = saturate(all);
      break;
    case Scope::equal_size_only:
      report.pairs_checked = saturate(equal_pairs);
      break;
    case Scope::different_size_only:
      report.pairs_checked = saturate(all - equal_pairs);
      break;
  }

  if (best) {
    SubsetMask a = pool->mask(best->first);
    SubsetMask b = pool->mask(best->second);
    if (signature(a, landmarks) != signature(b, landmarks) || !in_scope(options.scope, a, b, options.W)) {
      throw std::logic_error("verify_resolving: witness failed re-verification");
    }
    report.resolving = false;
    report.witness.emplace(std::move(a), std::move(b));
  }
  return report;
}

NecessaryConditionsReport check_necessary_conditions(std::span<const SubsetMask> landmarks) {
  if (landmarks.empty()) throw ArgumentError("landmark list must be non-empty");
  const std::size_t n = landmarks.front().dimension();
  for (const auto& r : landmarks) {
    if (r.dimension() != n) throw DimensionError("landmarks over ground sets of different sizes");
  }
  NecessaryConditionsReport report;

  // Column x records which landmarks contain x; two elements are separated
  // exactly when their columns differ.
  const std::size_t col_words = word_count(landmarks.size());
  std::vector<std::vector<std::uint64_t>> columns(n, std::vector<std::uint64_t>(col_words, 0));
  SubsetMask cover(n);
  for (std::size_t l = 0; l < landmarks.size(); ++l) {
    const auto& r = landmarks[l];
    cover = cover | r;
    if (r.is_empty()) report.contains_empty = true;
    for (auto x : r.elements()) columns[x][l / 64] |= std::uint64_t{1} << (l % 64);
  }
  std::sort(columns.begin(), columns.end());
  report.separates_points = std::adjacent_find(columns.begin(), columns.end()) == columns.end();
  report.uncovered_elements = cover.complement().elements();
  report.passes = report.separates_points &&
                  (report.uncovered_elements.empty() ||
                   (report.uncovered_elements.size() == 1 && report.contains_empty));
  return report;
}

std::int64_t collision_inner_product(const SubsetMask& a, const SubsetMask& b, const SubsetMask& r) {
  const auto ar = static_cast<std::int64_t>((a & r).cardinality());
  const auto br = static_cast<std::int64_t>((b & r).cardinality());
  const auto sa = static_cast<std::int64_t>(a.cardinality());
  const auto sb = static_cast<std::int64_t>(b.cardinality());
  const auto sr = static_cast<std::int64_t>(r.cardinality());
  return (sr + sb) * ar - (sr + sa) * br;
}

bool inner_product_collision_test(const SubsetMask& a, const SubsetMask& b, const SubsetMask& r) {
  return collision_inner_product(a, b, r) == 0;
}

bool double_collision_identity(const SubsetMask& a, const SubsetMask& b, const SubsetMask& r) {
  const auto ar = static_cast<std::int64_t>((a & r).cardinality());
  const auto br = static_cast<std::int64_t>((b & r).cardinality());
  const auto sa = static_cast<std::int64_t>(a.cardinality());
  const auto sb = static_cast<std::int64_t>(b.cardinality());
  const auto sr = static_cast<std::int64_t>(r.cardinality());
  const auto src = static_cast<std::int64_t>(r.dimension()) - sr;
  return (src - sr) * (br - ar) == src * (sb - sa);
}

}  // namespace jacres
