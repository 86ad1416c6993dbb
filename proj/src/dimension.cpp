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

#include "jacres/dimension.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>

#include "jacres/errors.hpp"

namespace jacres {
namespace {

constexpr double kTieTolerance = 1e-12;

// dense_ids[s][card * (n+1) + inter] is a small id of the reduced distance
// between a point of size card and a landmark of size s sharing inter elements.
struct DenseDistanceIds {
  std::size_t n;
  std::size_t count = 0;
  std::vector<std::vector<std::uint16_t>> by_landmark_size;

  explicit DenseDistanceIds(std::size_t n_) : n(n_), by_landmark_size(n_ + 1) {
    const DistanceCodeTable codes(n);
    std::unordered_map<std::uint32_t, std::uint16_t> ids;
    for (std::size_t s = 0; s <= n; ++s) {
      auto& table = by_landmark_size[s];
      table.assign((n + 1) * (n + 1), 0);
      for (std::size_t card = 0; card <= n; ++card) {
        for (std::size_t inter = 0; inter <= std::min(card, s); ++inter) {
          if (card + s - inter > n) continue;
          const auto code = codes.code_from_counts(card, s, inter);
          auto [it, inserted] = ids.emplace(code, static_cast<std::uint16_t>(ids.size()));
          table[card * (n + 1) + inter] = it->second;
        }
      }
    }
    count = ids.size();
  }

  const std::uint16_t* table(std::size_t landmark_size) const { return by_landmark_size[landmark_size].data(); }
};

struct Partition {
  std::vector<std::uint32_t> order;   // points grouped by class
  std::vector<std::uint32_t> starts;  // class k spans [starts[k], starts[k+1])
};

struct Choice {
  double score = std::numeric_limits<double>::infinity();  // sum over classes of c ln c
  std::uint64_t candidate = 0;
  bool found = false;
};

bool better(double score, const Choice& best) {
  if (!best.found) return true;
  return score < best.score - kTieTolerance * std::max(1.0, std::abs(best.score));
}

class IchScanner {
 public:
  IchScanner(std::size_t n, const DenseDistanceIds& ids, const std::vector<double>& clnc)
      : n_(n), ids_(ids), clnc_(clnc), popcount_(std::size_t{1} << n) {
    for (std::size_t a = 0; a < popcount_.size(); ++a) popcount_[a] = static_cast<std::uint8_t>(std::popcount(a));
  }

  double score(const Partition& p, std::uint64_t r, std::vector<std::uint32_t>& counts,
               std::vector<std::uint16_t>& touched) const {
    const auto* table = ids_.table(popcount_[r]);
    const std::size_t stride = n_ + 1;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < p.starts.size(); ++k) {
      const auto b = p.starts[k];
      const auto e = p.starts[k + 1];
      if (e - b < 2) continue;
      touched.clear();
      for (auto i = b; i < e; ++i) {
        const auto a = p.order[i];
        const auto id = table[popcount_[a] * stride + popcount_[a & r]];
        if (counts[id]++ == 0) touched.push_back(id);
      }
      for (auto id : touched) {
        total += clnc_[counts[id]];
        counts[id] = 0;
      }
    }
    return total;
  }

  Choice scan(const Partition& p, std::uint64_t begin, std::uint64_t end) const {
    std::vector<std::uint32_t> counts(ids_.count, 0);
    std::vector<std::uint16_t> touched;
    Choice best;
    for (std::uint64_t r = begin; r < end; ++r) {
      const double s = score(p, r, counts, touched);
      if (better(s, best)) best = Choice{s, r, true};
    }
    return best;
  }

  Partition refine(const Partition& p, std::uint64_t r) const {
    const auto* table = ids_.table(popcount_[r]);
    const std::size_t stride = n_ + 1;
    Partition out;
    out.order.reserve(p.order.size());
    out.starts.push_back(0);
    std::vector<std::pair<std::uint16_t, std::uint32_t>> block;
    for (std::size_t k = 0; k + 1 < p.starts.size(); ++k) {
      block.clear();
      for (auto i = p.starts[k]; i < p.starts[k + 1]; ++i) {
        const auto a = p.order[i];
        block.emplace_back(table[popcount_[a] * stride + popcount_[a & r]], a);
      }
      std::sort(block.begin(), block.end());
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (i > 0 && block[i].first != block[i - 1].first) out.starts.push_back(static_cast<std::uint32_t>(out.order.size()));
        out.order.push_back(block[i].second);
      }
      out.starts.push_back(static_cast<std::uint32_t>(out.order.size()));
    }
    return out;
  }

 private:
  std::size_t n_;
  const DenseDistanceIds& ids_;
  const std::vector<double>& clnc_;
  std::vector<std::uint8_t> popcount_;
};

double partition_score(const Partition& p, const std::vector<double>& clnc) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < p.starts.size(); ++k) total += clnc[p.starts[k + 1] - p.starts[k]];
  return total;
}

}  // namespace

IchResult ich_greedy(const GroundSet& gs, const IchOptions& options) {
  const std::size_t n = gs.size();
  const std::size_t limit = std::min(options.limit, std::size_t{20});
  if (n > limit) {
    throw ResourceError("ICH at n=" + std::to_string(n) + " exceeds the limit n<=" + std::to_string(limit));
  }
  const std::uint64_t points = std::uint64_t{1} << n;
  const double total = static_cast<double>(points);

  std::vector<double> clnc(points + 1, 0.0);
  for (std::uint64_t c = 2; c <= points; ++c) clnc[c] = static_cast<double>(c) * std::log(static_cast<double>(c));

  const DenseDistanceIds ids(n);
  const IchScanner scanner(n, ids, clnc);

  Partition part;
  part.order.resize(points);
  for (std::uint64_t a = 0; a < points; ++a) part.order[a] = static_cast<std::uint32_t>(a);
  part.starts = {0, static_cast<std::uint32_t>(points)};

  IchResult result;
  std::size_t card_sum = 0;
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(options.workers, points));
  while (part.starts.size() - 1 < points) {
    Choice best;
    if (workers == 1) {
      best = scanner.scan(part, 0, points);
    } else {
      std::vector<Choice> local(workers);
      {
        std::vector<std::jthread> threads;
        const std::uint64_t chunk = (points + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
          const std::uint64_t b = std::min(points, w * chunk);
          const std::uint64_t e = std::min(points, b + chunk);
          threads.emplace_back([&, w, b, e] { local[w] = scanner.scan(part, b, e); });
        }
      }
      for (const auto& c : local) {
        if (c.found && better(c.score, best)) best = c;
      }
    }
    const double current = partition_score(part, clnc);
    if (!best.found || !(best.score < current)) {
      throw std::logic_error("ICH made no progress on a non-discrete partition");
    }
    part = scanner.refine(part, best.candidate);
    auto landmark = SubsetMask::from_bits(n, best.candidate);
    card_sum += landmark.cardinality();
    const double entropy = std::log(total) - partition_score(part, clnc) / total;
    result.entropy_trace.push_back(EntropyStep{result.landmarks.size() + 1, landmark, entropy});
    result.landmarks.push_back(std::move(landmark));
  }
  result.size = result.landmarks.size();
  result.avg_landmark_cardinality =
      Rational(static_cast<std::int64_t>(card_sum), static_cast<std::int64_t>(result.size));
  return result;
}

ExactDimensionResult exact_metric_dimension(const GroundSet& gs, const ExactOptions& options) {
  const std::size_t n = gs.size();
  const std::size_t limit = std::min(options.limit, std::size_t{6});
  if (n > limit) {
    throw ResourceError("exact metric dimension at n=" + std::to_string(n) + " exceeds the limit n<=" +
                        std::to_string(limit));
  }
  const std::uint32_t points = std::uint32_t{1} << n;
  const DistanceCodeTable codes(n);
  std::vector<std::uint32_t> sizes(points);
  for (std::uint32_t a = 0; a < points; ++a) sizes[a] = static_cast<std::uint32_t>(std::popcount(a));

  ExactDimensionResult result;
  std::vector<std::uint32_t> pick;
  std::vector<std::uint64_t> columns(n);
  std::vector<std::vector<std::uint32_t>> sigs(points);

  auto passes_necessary = [&]() {
    std::uint32_t cover = 0;
    bool has_empty = false;
    std::fill(columns.begin(), columns.end(), 0);
    for (std::size_t l = 0; l < pick.size(); ++l) {
      cover |= pick[l];
      has_empty = has_empty || pick[l] == 0;
      for (std::size_t x = 0; x < n; ++x) {
        if ((pick[l] >> x) & 1u) columns[x] |= std::uint64_t{1} << l;
      }
    }
    auto sorted = columns;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    const auto uncovered = n - static_cast<std::size_t>(std::popcount(cover));
    return uncovered == 0 || (uncovered == 1 && has_empty);
  };

  auto resolves = [&]() {
    for (std::uint32_t a = 0; a < points; ++a) {
      auto& s = sigs[a];
      s.clear();
      for (auto r : pick) s.push_back(codes.code_from_counts(sizes[a], sizes[r], std::popcount(a & r)));
    }
    auto sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  };

  for (std::size_t m = 1; m <= points; ++m) {
    pick.resize(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = static_cast<std::uint32_t>(i);
    while (true) {
      ++result.sets_examined;
      if (!passes_necessary()) {
        ++result.sets_pruned;
      } else if (resolves()) {
        result.beta = m;
        for (auto r : pick) result.witness_set.push_back(SubsetMask::from_bits(n, r));
        return result;
      }
      // Next m-combination of {0..points-1} in lexicographic order.
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == points - m + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw std::logic_error("power set failed to resolve itself");
}

DimensionBracket dimension_bracket(std::size_t n) {
  if (n <= 2) throw DomainError("dimension bracket needs n >= 3");
  const double nd = static_cast<double>(n);
  const double denom = std::log(nd / 2.0);
  DimensionBracket b;
  b.lower = std::numbers::ln2 * nd / denom;
  b.upper = 2.0 * (1.0 + std::numbers::ln2) * nd / denom;
  b.ratio = b.upper / b.lower;
  return b;
}

std::optional<Table1Row> table1_reference(std::size_t n) {
  static constexpr std::array<std::size_t, 14> kSizes = {1, 2, 2, 3, 3, 4, 5, 5, 6, 6, 7, 7, 8, 8};
  static constexpr std::array<double, 14> kAvg = {1, 1.5, 2.0, 2.33, 2.66, 3.5, 4.4,
                                                  3.87, 4.3, 5.8, 5.9, 6, 6.4, 7.4};
  if (n < 1 || n > kSizes.size()) return std::nullopt;
  return Table1Row{n, kSizes[n - 1], kAvg[n - 1]};
}

}  // namespace jacres
