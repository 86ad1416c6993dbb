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

#include <bit>
#include <map>

#include "jacres/construct.hpp"
#include "jacres/errors.hpp"
#include "jacres/resolve.hpp"

namespace jacres {
namespace {

std::vector<SubsetMask> masks(std::size_t n, std::initializer_list<std::initializer_list<std::size_t>> sets) {
  std::vector<SubsetMask> out;
  for (auto s : sets) out.push_back(SubsetMask::from_elements(n, s));
  return out;
}

// Naive O(4^n) pair scan; returns the least colliding in-scope pair.
std::optional<std::pair<std::uint64_t, std::uint64_t>> naive_witness(std::size_t n, const std::vector<SubsetMask>& R,
                                                                     Scope scope, std::optional<std::size_t> W) {
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> sig(count);
  for (std::uint64_t a = 0; a < count; ++a) {
    const auto ma = SubsetMask::from_bits(n, a);
    for (const auto& r : R) {
      // Unreduced fraction compared by cross multiplication below.
      const auto u = (ma | r).cardinality();
      const auto i = (ma & r).cardinality();
      sig[a].push_back({u - i, u == 0 ? 1 : u});
    }
  }
  auto same = [&](std::uint64_t a, std::uint64_t b) {
    for (std::size_t l = 0; l < R.size(); ++l) {
      if (sig[a][l].first * sig[b][l].second != sig[b][l].first * sig[a][l].second) return false;
    }
    return true;
  };
  for (std::uint64_t a = 0; a < count; ++a) {
    for (std::uint64_t b = a + 1; b < count; ++b) {
      const auto pa = std::popcount(a), pb = std::popcount(b);
      bool ok = true;
      switch (scope) {
        case Scope::all_pairs:
          break;
        case Scope::equal_size_only:
          ok = pa == pb;
          break;
        case Scope::different_size_only:
          ok = pa != pb;
          break;
        case Scope::size_at_most_W:
          ok = static_cast<std::size_t>(pa) <= *W && static_cast<std::size_t>(pb) <= *W;
          break;
      }
      if (ok && same(a, b)) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

TEST(Signature, CounterexampleFromNecessaryConditions) {
  // X = {0,1,2,3}, R = {{0,1},{0,2},{0,3}}.
  const auto R = masks(4, {{0, 1}, {0, 2}, {0, 3}});
  const Signature half{{RationalDistance(1, 2), RationalDistance(1, 2), RationalDistance(1, 2)}};
  EXPECT_EQ(signature(SubsetMask::from_elements(4, {0}), R), half);
  EXPECT_EQ(signature(SubsetMask::full(4), R), half);
  const Signature ones{{RationalDistance(1, 1), RationalDistance(1, 1), RationalDistance(1, 1)}};
  EXPECT_EQ(signature(SubsetMask::empty(4), R), ones);
  EXPECT_THROW(signature(SubsetMask::empty(4), std::vector<SubsetMask>{}), ArgumentError);
}

TEST(Verify, CounterexampleWitness) {
  const auto R = masks(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto rep = verify_resolving(R);
  ASSERT_FALSE(rep.resolving);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->first, SubsetMask::from_elements(4, {0}));
  EXPECT_EQ(rep.witness->second, SubsetMask::full(4));
  EXPECT_EQ(rep.masks_enumerated, 16u);

  const auto nc = check_necessary_conditions(R);
  EXPECT_TRUE(nc.separates_points);
  EXPECT_TRUE(nc.uncovered_elements.empty());
  EXPECT_TRUE(nc.passes);
}

TEST(Verify, WholePowerSetResolves) {
  std::vector<SubsetMask> R;
  for (std::uint64_t b = 0; b < 16; ++b) R.push_back(SubsetMask::from_bits(4, b));
  const auto rep = verify_resolving(R);
  EXPECT_TRUE(rep.resolving);
  EXPECT_EQ(rep.pairs_checked, 120u);
}

TEST(Verify, TripleResolvesDifferentSizes) {
  const auto R = masks(4, {{}, {0}, {1, 2, 3}});
  VerifyOptions o;
  o.scope = Scope::different_size_only;
  EXPECT_TRUE(verify_resolving(R, o).resolving);
  // Not resolving for equal sizes: {1} and {2} share every distance.
  o.scope = Scope::equal_size_only;
  EXPECT_FALSE(verify_resolving(R, o).resolving);
}

TEST(Verify, MatchesNaiveOracleOnRandomLandmarkSets) {
  SeededGenerator rng(99);
  const Scope scopes[] = {Scope::all_pairs, Scope::equal_size_only, Scope::different_size_only,
                          Scope::size_at_most_W};
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t m = 1 + rng() % 5;
      std::vector<SubsetMask> R;
      for (std::size_t i = 0; i < m; ++i) R.push_back(sample_binomial_subset(n, rng));
      for (auto scope : scopes) {
        const std::optional<std::size_t> W =
            scope == Scope::size_at_most_W ? std::optional<std::size_t>(1 + rng() % n) : std::nullopt;
        const auto expected = naive_witness(n, R, scope, W);
        for (std::size_t workers : {1u, 3u}) {
          VerifyOptions o;
          o.scope = scope;
          o.W = W;
          o.workers = workers;
          const auto rep = verify_resolving(R, o);
          ASSERT_EQ(rep.resolving, !expected) << "n=" << n << " scope=" << to_string(scope);
          if (expected) {
            EXPECT_EQ(rep.witness->first.to_bits(), expected->first);
            EXPECT_EQ(rep.witness->second.to_bits(), expected->second);
            EXPECT_TRUE(in_scope(scope, rep.witness->first, rep.witness->second, W));
            EXPECT_EQ(signature(rep.witness->first, R), signature(rep.witness->second, R));
          }
        }
      }
    }
  }
}

TEST(Verify, ScopeConsistency) {
  SeededGenerator rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5;
    std::vector<SubsetMask> R;
    for (int i = 0; i < 5; ++i) R.push_back(sample_binomial_subset(n, rng));
    if (!verify_resolving(R).resolving) continue;
    for (auto scope : {Scope::equal_size_only, Scope::different_size_only}) {
      VerifyOptions o;
      o.scope = scope;
      EXPECT_TRUE(verify_resolving(R, o).resolving);
    }
    VerifyOptions o;
    o.scope = Scope::size_at_most_W;
    o.W = 2;
    EXPECT_TRUE(verify_resolving(R, o).resolving);
  }
}

TEST(Verify, ResolvingImpliesNecessaryConditions) {
  SeededGenerator rng(11);
  std::size_t resolving = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<SubsetMask> R;
      const std::size_t m = 2 + rng() % 5;
      for (std::size_t i = 0; i < m; ++i) R.push_back(sample_binomial_subset(n, rng));
      if (verify_resolving(R).resolving) {
        ++resolving;
        EXPECT_TRUE(check_necessary_conditions(R).passes);
      }
    }
  }
  EXPECT_GT(resolving, 50u);
}

TEST(Verify, SizeCappedScopeAtLargeN) {
  SeededGenerator rng(3);
  std::vector<SubsetMask> R;
  for (int i = 0; i < 40; ++i) R.push_back(sample_binomial_subset(200, rng));
  VerifyOptions o;
  o.scope = Scope::size_at_most_W;
  o.W = 2;
  const auto rep = verify_resolving(R, o);
  EXPECT_EQ(rep.masks_enumerated, 1u + 200u + 200u * 199u / 2u);
}

TEST(Verify, Errors) {
  EXPECT_THROW(verify_resolving(std::vector<SubsetMask>{}), ArgumentError);
  std::vector<SubsetMask> mixed{SubsetMask::empty(3), SubsetMask::empty(4)};
  EXPECT_THROW(verify_resolving(mixed), DimensionError);
  std::vector<SubsetMask> big{SubsetMask::empty(25)};
  EXPECT_THROW(verify_resolving(big), ResourceError);
  VerifyOptions o;
  o.scope = Scope::size_at_most_W;
  EXPECT_THROW(verify_resolving(masks(4, {{0}}), o), ArgumentError);
  o.W = 5;
  EXPECT_THROW(verify_resolving(masks(4, {{0}}), o), ArgumentError);
  EXPECT_THROW(parse_scope("nope"), ArgumentError);
  EXPECT_EQ(parse_scope("size_at_most_W"), Scope::size_at_most_W);
}

TEST(NecessaryConditions, Examples) {
  const auto full = check_necessary_conditions(masks(4, {{0, 1, 2, 3}}));
  EXPECT_FALSE(full.separates_points);
  EXPECT_FALSE(full.passes);

  const auto unc = check_necessary_conditions(masks(4, {{0}, {1}, {2}}));
  EXPECT_TRUE(unc.separates_points);
  EXPECT_EQ(unc.uncovered_elements, std::vector<std::size_t>{3});
  EXPECT_FALSE(unc.contains_empty);
  EXPECT_FALSE(unc.passes);

  const auto with_empty = check_necessary_conditions(masks(4, {{}, {0}, {1}, {2}}));
  EXPECT_TRUE(with_empty.contains_empty);
  EXPECT_TRUE(with_empty.passes);
}

TEST(InnerProduct, EquivalentToCollisionExhaustivelyAtFive) {
  const std::size_t n = 5;
  for (std::uint64_t a = 0; a < 32; ++a) {
    for (std::uint64_t b = 0; b < 32; ++b) {
      const auto ma = SubsetMask::from_bits(n, a), mb = SubsetMask::from_bits(n, b);
      EXPECT_TRUE(inner_product_collision_test(ma, mb, SubsetMask::empty(n)));
      for (std::uint64_t r = 1; r < 32; ++r) {
        const auto mr = SubsetMask::from_bits(n, r);
        ASSERT_EQ(inner_product_collision_test(ma, mb, mr), jaccard(ma, mr) == jaccard(mb, mr));
      }
    }
  }
}

TEST(DoubleCollision, ImpliedByCollisionOnBothSides) {
  const std::size_t n = 5;
  std::size_t premises = 0;
  for (std::uint64_t a = 0; a < 32; ++a) {
    for (std::uint64_t b = 0; b < 32; ++b) {
      const auto ma = SubsetMask::from_bits(n, a), mb = SubsetMask::from_bits(n, b);
      for (std::uint64_t r = 0; r < 32; ++r) {
        const auto mr = SubsetMask::from_bits(n, r);
        if (a == b) ASSERT_TRUE(double_collision_identity(ma, mb, mr));
        if (jaccard(ma, mr) == jaccard(mb, mr) && jaccard(ma, ~mr) == jaccard(mb, ~mr)) {
          ++premises;
          ASSERT_TRUE(double_collision_identity(ma, mb, mr));
        }
      }
    }
  }
  EXPECT_GT(premises, 32u * 32u);
  // Premise fails here and so does the identity.
  EXPECT_FALSE(double_collision_identity(SubsetMask::empty(2), SubsetMask::from_elements(2, {0}),
                                         SubsetMask::from_elements(2, {0})));
}

}  // namespace
}  // namespace jacres
