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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "jacres/errors.hpp"
#include "jacres/setcore.hpp"

namespace jacres {
namespace {

// Independent set model for oracles.
std::set<std::size_t> as_set(std::size_t n, std::uint64_t bits) {
  std::set<std::size_t> s;
  for (std::size_t x = 0; x < n; ++x) {
    if ((bits >> x) & 1u) s.insert(x);
  }
  return s;
}

// |a xor b| / |a or b| via std::set, unreduced.
std::pair<std::uint64_t, std::uint64_t> naive_jaccard(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  std::set<std::size_t> uni(a), inter;
  uni.insert(b.begin(), b.end());
  for (auto x : a) {
    if (b.count(x)) inter.insert(x);
  }
  if (uni.empty()) return {0, 1};
  return {uni.size() - inter.size(), uni.size()};
}

TEST(GroundSet, RejectsEmptyAndDuplicates) {
  EXPECT_THROW(GroundSet(0), ArgumentError);
  EXPECT_THROW(GroundSet(std::vector<std::string>{}), ArgumentError);
  EXPECT_THROW(GroundSet(std::vector<std::string>{"a", "b", "a"}), ArgumentError);
  const GroundSet gs(std::vector<std::string>{"x", "y"});
  EXPECT_EQ(gs.size(), 2u);
  EXPECT_EQ(gs.index_of("y"), 1u);
  EXPECT_FALSE(gs.index_of("z"));
}

TEST(SubsetMask, SetAlgebraMatchesStdSetExhaustively) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < count; ++a) {
      const auto ma = SubsetMask::from_bits(n, a);
      const auto sa = as_set(n, a);
      ASSERT_EQ(ma.cardinality(), sa.size());
      std::set<std::size_t> comp;
      for (std::size_t x = 0; x < n; ++x) {
        if (!sa.count(x)) comp.insert(x);
      }
      auto celems = ma.complement().elements();
      ASSERT_EQ(std::set<std::size_t>(celems.begin(), celems.end()), comp);
      for (std::uint64_t b = 0; b < count; ++b) {
        const auto mb = SubsetMask::from_bits(n, b);
        const auto sb = as_set(n, b);
        std::set<std::size_t> u, i, d, s;
        for (std::size_t x = 0; x < n; ++x) {
          const bool in_a = sa.count(x), in_b = sb.count(x);
          if (in_a || in_b) u.insert(x);
          if (in_a && in_b) i.insert(x);
          if (in_a && !in_b) d.insert(x);
          if (in_a != in_b) s.insert(x);
        }
        auto eu = (ma | mb).elements(), ei = (ma & mb).elements(), ed = ma.difference(mb).elements(),
             es = (ma ^ mb).elements();
        ASSERT_EQ(std::set<std::size_t>(eu.begin(), eu.end()), u);
        ASSERT_EQ(std::set<std::size_t>(ei.begin(), ei.end()), i);
        ASSERT_EQ(std::set<std::size_t>(ed.begin(), ed.end()), d);
        ASSERT_EQ(std::set<std::size_t>(es.begin(), es.end()), s);
        ASSERT_EQ(ma.is_subset_of(mb), d.empty());
      }
    }
  }
}

TEST(SubsetMask, MultiWordCanonicalTail) {
  const std::size_t n = 130;
  const auto full = SubsetMask::full(n);
  EXPECT_EQ(full.cardinality(), n);
  EXPECT_EQ(full.words().size(), 3u);
  EXPECT_EQ(full.words()[2], 0x3u);
  EXPECT_TRUE(full.complement().is_empty());
  const auto m = SubsetMask::from_elements(n, {0, 64, 129});
  EXPECT_EQ(m.complement().cardinality(), n - 3);
  EXPECT_TRUE(m.contains(129));
  EXPECT_FALSE(m.contains(128));
  EXPECT_EQ(m.to_string(), "{0,64,129}");
  EXPECT_THROW(SubsetMask::from_words(n, {0, 0, 0x4}), ArgumentError);
  EXPECT_THROW(SubsetMask::from_elements(n, {130}), ArgumentError);
  EXPECT_THROW(m | SubsetMask::full(129), DimensionError);
}

TEST(SubsetMask, OrderingIsByIntegerEncoding) {
  EXPECT_LT(SubsetMask::from_bits(4, 1), SubsetMask::from_bits(4, 2));
  EXPECT_LT(SubsetMask::from_bits(4, 7), SubsetMask::from_bits(4, 8));
  const auto lo = SubsetMask::from_elements(70, {63});
  const auto hi = SubsetMask::from_elements(70, {64});
  EXPECT_LT(lo, hi);
}

TEST(Jaccard, Examples) {
  // Elements written 1-based in prose are shifted to 0-based indices here.
  EXPECT_EQ(jaccard(SubsetMask::from_elements(4, {0, 1}), SubsetMask::from_elements(4, {1, 2})), RationalDistance(2, 3));
  EXPECT_EQ(jaccard(SubsetMask::empty(4), SubsetMask::empty(4)), RationalDistance(0, 1));
  EXPECT_EQ(jaccard(SubsetMask::from_elements(4, {0}), SubsetMask::full(4)), RationalDistance(3, 4));
  EXPECT_EQ(jaccard(SubsetMask::from_elements(4, {0}), SubsetMask::from_elements(4, {0, 1})), RationalDistance(1, 2));
  EXPECT_THROW(jaccard(SubsetMask::empty(3), SubsetMask::empty(4)), DimensionError);
}

TEST(Jaccard, MatchesNaiveAndIsReduced) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < count; ++a) {
      for (std::uint64_t b = 0; b < count; ++b) {
        const auto d = jaccard(SubsetMask::from_bits(n, a), SubsetMask::from_bits(n, b));
        const auto [num, den] = naive_jaccard(as_set(n, a), as_set(n, b));
        ASSERT_EQ(std::gcd(d.num(), d.den()), 1u);
        ASSERT_LE(d.num(), d.den());
        ASSERT_EQ(std::uint64_t{d.num()} * den, num * std::uint64_t{d.den()});
      }
    }
  }
}

TEST(Jaccard, MetricAxiomsExhaustiveUpToFive) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<SubsetMask> all;
    for (std::uint64_t a = 0; a < count; ++a) all.push_back(SubsetMask::from_bits(n, a));
    for (std::uint64_t a = 0; a < count; ++a) {
      for (std::uint64_t b = 0; b < count; ++b) {
        const auto dab = jaccard(all[a], all[b]);
        ASSERT_EQ(dab, jaccard(all[b], all[a]));
        ASSERT_EQ(dab.num() == 0, a == b);
        const bool disjoint_nonempty = (a & b) == 0 && (a | b) != 0;
        ASSERT_EQ(dab.num() == dab.den() && dab.num() != 0, disjoint_nonempty);
        for (std::uint64_t c = 0; c < count; ++c) {
          const auto dac = jaccard(all[a], all[c]);
          const auto dcb = jaccard(all[c], all[b]);
          // dab <= dac + dcb, cross-multiplied
          const std::uint64_t lhs = std::uint64_t{dab.num()} * dac.den() * dcb.den();
          const std::uint64_t rhs =
              (std::uint64_t{dac.num()} * dcb.den() + std::uint64_t{dcb.num()} * dac.den()) * dab.den();
          ASSERT_LE(lhs, rhs) << a << ' ' << b << ' ' << c;
        }
      }
    }
  }
}

TEST(Jaccard, SingletonAndCoSingletonFormulas) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t x = 0; x < n; ++x) {
      const auto sx = SubsetMask::singleton(n, x);
      const auto cx = sx.complement();
      for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        const auto c = SubsetMask::from_bits(n, bits);
        const std::uint32_t k = static_cast<std::uint32_t>(c.cardinality());
        const auto nn = static_cast<std::uint32_t>(n);
        if (c.contains(x)) {
          ASSERT_EQ(jaccard(c, sx), RationalDistance::from_counts(k - 1, k));
          ASSERT_EQ(jaccard(c, cx), RationalDistance::from_counts(nn - (k - 1), nn));
        } else {
          ASSERT_EQ(jaccard(c, sx), RationalDistance(1, 1));
          ASSERT_EQ(jaccard(c, cx), RationalDistance::from_counts(nn - 1 - k, nn - 1));
        }
      }
    }
  }
}

TEST(DistanceCodeTable, AgreesWithJaccard) {
  const std::size_t n = 9;
  const DistanceCodeTable table(n);
  for (std::uint64_t a = 0; a < (1u << n); a += 7) {
    for (std::uint64_t b = 0; b < (1u << n); b += 5) {
      const auto ma = SubsetMask::from_bits(n, a), mb = SubsetMask::from_bits(n, b);
      const auto code = table.code_from_counts(ma.cardinality(), mb.cardinality(), (ma & mb).cardinality());
      ASSERT_EQ(DistanceCodeTable::decode(code), jaccard(ma, mb));
    }
  }
}

TEST(Sampling, SameSeedSameStream) {
  SeededGenerator g1(42), g2(42), g3(43);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const auto a = sample_binomial_subset(100, g1);
    ASSERT_EQ(a, sample_binomial_subset(100, g2));
    if (a != sample_binomial_subset(100, g3)) differs = true;
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(SeededGenerator(10).derive(3).seed(), 10u ^ 3u);
}

TEST(Sampling, MeanCardinalityAndMarginalsAtN32) {
  const std::size_t n = 32, samples = 100000;
  SeededGenerator rng(2026);
  double sum = 0;
  std::vector<std::size_t> hits(n, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto r = sample_binomial_subset(n, rng);
    sum += static_cast<double>(r.cardinality());
    for (auto x : r.elements()) ++hits[x];
  }
  // Var |r| = n/4.
  const double se_mean = std::sqrt(n / 4.0 / samples);
  EXPECT_NEAR(sum / samples, 16.0, 3 * se_mean);
  const double se_p = std::sqrt(0.25 / samples);
  for (std::size_t x = 0; x < n; ++x) EXPECT_NEAR(static_cast<double>(hits[x]) / samples, 0.5, 3 * se_p) << x;
}

TEST(Sampling, TailBitsStayClear) {
  SeededGenerator rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto r = sample_binomial_subset(70, rng);
    ASSERT_EQ(r.words()[1] >> 6, 0u);
  }
}

TEST(PowerSet, AscendingOrderAndLimit) {
  std::vector<std::string> seen;
  for (const auto& m : enumerate_power_set(GroundSet(2))) seen.push_back(m.to_string());
  EXPECT_EQ(seen, (std::vector<std::string>{"{}", "{0}", "{1}", "{0,1}"}));
  std::set<std::uint64_t> distinct;
  for (const auto& m : enumerate_power_set(GroundSet(4))) distinct.insert(m.to_bits());
  EXPECT_EQ(distinct.size(), 16u);
  EXPECT_THROW(enumerate_power_set(GroundSet(25)), ResourceError);
  EXPECT_NO_THROW(enumerate_power_set(GroundSet(25), 25));
}

}  // namespace
}  // namespace jacres
