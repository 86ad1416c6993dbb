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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "jacres/setcore.hpp"

namespace jacres {

// Which pairs (a, b) of distinct subsets a verification run must resolve.
enum class Scope {
  all_pairs,
  equal_size_only,
  different_size_only,
  size_at_most_W,  // |a|, |b| <= W
};

std::string_view to_string(Scope scope);
Scope parse_scope(std::string_view text);

// Whether the unordered pair {a, b} belongs to the scope.
bool in_scope(Scope scope, const SubsetMask& a, const SubsetMask& b, std::optional<std::size_t> W = std::nullopt);

// d(a|R): one exact distance per landmark, in landmark order.
struct Signature {
  std::vector<RationalDistance> coords;

  friend bool operator==(const Signature& a, const Signature& b) = default;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const noexcept;
};

Signature signature(const SubsetMask& a, std::span<const SubsetMask> landmarks);

struct ResolutionReport {
  bool resolving = true;
  // Lexicographically least colliding in-scope pair (a < b by integer encoding).
  std::optional<std::pair<SubsetMask, SubsetMask>> witness;
  Scope scope = Scope::all_pairs;
  std::optional<std::size_t> W;
  // Number of unordered in-scope pairs covered by the run (saturates at 2^64-1).
  std::uint64_t pairs_checked = 0;
  std::uint64_t masks_enumerated = 0;
};

struct VerifyOptions {
  Scope scope = Scope::all_pairs;
  std::optional<std::size_t> W;
  std::size_t workers = 1;
  // Full-enumeration scopes need n <= limit; size_at_most_W needs at most
  // 2^limit masks of size <= W.
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
};

// Exhaustive check that d(.|R) is injective on the pairs selected by the
// scope. The witness does not depend on the worker count.
ResolutionReport verify_resolving(std::span<const SubsetMask> landmarks, const VerifyOptions& options = {});

struct NecessaryConditionsReport {
  bool separates_points = false;
  std::vector<std::size_t> uncovered_elements;
  bool contains_empty = false;
  bool passes = false;
};

// Separation of the elements of X and coverage of all but at most one element
// (and that only when the empty set is a landmark).
NecessaryConditionsReport check_necessary_conditions(std::span<const SubsetMask> landmarks);

// <r, z> with z = (|r|+|b|) a - (|r|+|a|) b.
std::int64_t collision_inner_product(const SubsetMask& a, const SubsetMask& b, const SubsetMask& r);

// <r, z> == 0. For r != {} this is exactly Jac(a,r) == Jac(b,r).
bool inner_product_collision_test(const SubsetMask& a, const SubsetMask& b, const SubsetMask& r);

// (|r^c| - |r|)(|br| - |ar|) == |r^c| (|b| - |a|), which every pair that
// collides on both r and r^c satisfies.
bool double_collision_identity(const SubsetMask& a, const SubsetMask& b, const SubsetMask& r);

}  // namespace jacres
