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
#include <vector>

#include "jacres/rational.hpp"
#include "jacres/setcore.hpp"

namespace jacres {

inline constexpr std::size_t kDefaultIchLimit = 14;
inline constexpr std::size_t kDefaultExactLimit = 5;

struct EntropyStep {
  std::size_t iteration = 0;
  SubsetMask landmark;
  double entropy = 0.0;  // natural log, of the partition after this step
};

struct IchResult {
  std::vector<SubsetMask> landmarks;
  std::size_t size = 0;
  Rational avg_landmark_cardinality;
  std::vector<EntropyStep> entropy_trace;
};

struct IchOptions {
  std::size_t limit = kDefaultIchLimit;
  std::size_t workers = 1;
};

// Information Content Heuristic over the 2^n points of the power set.
//
// Each round scans every mask as a candidate landmark and keeps the one whose
// distance column splits the current partition into classes of maximum
// Shannon entropy. Entropies within a relative 1e-12 of each other count as
// tied and the least integer encoding wins. Rounds stop once every point is
// alone in its class, so the result always resolves 2^X.
IchResult ich_greedy(const GroundSet& gs, const IchOptions& options = {});

struct ExactDimensionResult {
  std::size_t beta = 0;
  std::vector<SubsetMask> witness_set;
  std::uint64_t sets_examined = 0;
  std::uint64_t sets_pruned = 0;  // rejected by the necessary conditions alone
};

struct ExactOptions {
  std::size_t limit = kDefaultExactLimit;
};

// Smallest resolving set by exhaustive search over landmark combinations of
// increasing size, in lexicographic order of integer encodings. The first
// resolving combination found is returned.
ExactDimensionResult exact_metric_dimension(const GroundSet& gs, const ExactOptions& options = {});

struct DimensionBracket {
  double lower = 0.0;  // ln(2) n / ln(n/2)
  double upper = 0.0;  // 2 ln(2e) n / ln(n/2)
  double ratio = 0.0;  // upper / lower == 2 ln(2e) / ln 2
};

// Leading-order bracket for the metric dimension; n <= 2 throws DomainError.
DimensionBracket dimension_bracket(std::size_t n);

struct Table1Row {
  std::size_t n;
  std::size_t size;
  double avg_cardinality;
};

// Published ICH sizes and average landmark cardinalities for n = 1..14.
std::optional<Table1Row> table1_reference(std::size_t n);

}  // namespace jacres
