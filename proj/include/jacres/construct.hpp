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
#include <string>
#include <string_view>
#include <vector>

#include "jacres/rational.hpp"
#include "jacres/setcore.hpp"

namespace jacres {

enum class ConstructionKind {
  triple,      // {}, {x}, X \ {x}
  theorem1,    // triple followed by k random subsets
  theorem2,    // r_1, r_1^c, ..., r_k, r_k^c
  corollary3,  // theorem2 landmarks plus the size cap W
};

std::string_view to_string(ConstructionKind kind);
ConstructionKind parse_kind(std::string_view text);

struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::theorem1;
  std::size_t n = 0;
  std::optional<Rational> epsilon;  // theorem2 / corollary3 only
  std::size_t x_pivot = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> k_override;

  // Throws ArgumentError/DomainError for inconsistent fields.
  void validate() const;
};

struct Construction {
  ConstructionSpec spec;
  std::size_t k = 0;
  std::vector<SubsetMask> masks;
  std::optional<std::size_t> W;  // corollary3 only
  bool has_duplicates = false;
  std::vector<std::string> warnings;
};

bool has_duplicate_masks(std::span<const SubsetMask> masks);

// Exactly [{}, {x}, X \ {x}], duplicates included when n == 1.
std::vector<SubsetMask> build_triple(const GroundSet& gs, std::size_t x);

// ceil(2 ln(2e) n / ln(n/2)); n <= 2 throws DomainError.
std::size_t theorem1_k(std::size_t n);

// Least integer k with k >= (4 + epsilon) sqrt(n), decided in exact integer
// arithmetic.
std::size_t theorem2_k(std::size_t n, const Rational& epsilon);

// floor((1 - epsilon) ln(pi) sqrt(n) / ln(n)), 0 < epsilon < 1, n >= 2.
std::size_t corollary3_W(std::size_t n, const Rational& epsilon);

Construction build_theorem1(const ConstructionSpec& spec);
Construction build_theorem2(const ConstructionSpec& spec);

// Dispatches on spec.kind.
Construction build_construction(const ConstructionSpec& spec);

}  // namespace jacres
