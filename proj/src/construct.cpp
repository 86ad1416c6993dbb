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

#include "jacres/construct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jacres/errors.hpp"

namespace jacres {
namespace {

void finish(Construction& c) {
  c.has_duplicates = has_duplicate_masks(c.masks);
  if (c.has_duplicates) c.warnings.emplace_back("landmark list contains duplicate masks; kept as sampled");
}

}  // namespace

std::string_view to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::triple:
      return "triple";
    case ConstructionKind::theorem1:
      return "theorem1";
    case ConstructionKind::theorem2:
      return "theorem2";
    case ConstructionKind::corollary3:
      return "corollary3";
  }
  return "unknown";
}

ConstructionKind parse_kind(std::string_view text) {
  for (auto k : {ConstructionKind::triple, ConstructionKind::theorem1, ConstructionKind::theorem2,
                 ConstructionKind::corollary3}) {
    if (text == to_string(k)) return k;
  }
  throw ArgumentError("unknown construction kind '" + std::string(text) + "'");
}

void ConstructionSpec::validate() const {
  if (n == 0) throw ArgumentError("construction requires n >= 1");
  const bool needs_eps = kind == ConstructionKind::theorem2 || kind == ConstructionKind::corollary3;
  if (needs_eps && !epsilon) throw ArgumentError(std::string(to_string(kind)) + " requires epsilon");
  if (!needs_eps && epsilon) throw ArgumentError(std::string(to_string(kind)) + " does not take epsilon");
  if (epsilon && *epsilon <= Rational(0)) throw DomainError("epsilon must be positive");
  if (kind == ConstructionKind::corollary3 && *epsilon >= Rational(1)) {
    throw DomainError("corollary3 requires epsilon < 1");
  }
  if ((kind == ConstructionKind::triple || kind == ConstructionKind::theorem1) && x_pivot >= n) {
    throw ArgumentError("pivot " + std::to_string(x_pivot) + " outside ground set of size " + std::to_string(n));
  }
}

bool has_duplicate_masks(std::span<const SubsetMask> masks) {
  std::vector<SubsetMask> sorted(masks.begin(), masks.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::vector<SubsetMask> build_triple(const GroundSet& gs, std::size_t x) {
  const std::size_t n = gs.size();
  auto single = SubsetMask::singleton(n, x);
  auto rest = single.complement();
  return {SubsetMask::empty(n), std::move(single), std::move(rest)};
}

std::size_t theorem1_k(std::size_t n) {
  if (n <= 2) throw DomainError("theorem1_k needs n >= 3 (ln(n/2) <= 0); pass an explicit k override");
  const double nd = static_cast<double>(n);
  const double value = 2.0 * (1.0 + std::numbers::ln2) * nd / std::log(nd / 2.0);
  return static_cast<std::size_t>(std::ceil(value));
}

std::size_t theorem2_k(std::size_t n, const Rational& epsilon) {
  if (n == 0) throw DomainError("theorem2_k needs n >= 1");
  if (epsilon <= Rational(0)) throw DomainError("theorem2_k needs epsilon > 0");
  // k >= ((4q + p) / q) sqrt(n)  <=>  (k q)^2 >= (4q + p)^2 n.
  const __int128 p = epsilon.num();
  const __int128 q = epsilon.den();
  const __int128 c = 4 * q + p;
  const __int128 rhs = c * c * static_cast<__int128>(n);
  const double approx = (4.0 + epsilon.to_double()) * std::sqrt(static_cast<double>(n));
  __int128 k = std::max<__int128>(0, static_cast<__int128>(std::floor(approx)) - 2);
  while ((k * q) * (k * q) < rhs) ++k;
  return static_cast<std::size_t>(k);
}

std::size_t corollary3_W(std::size_t n, const Rational& epsilon) {
  if (n < 2) throw DomainError("corollary3_W needs n >= 2");
  if (epsilon <= Rational(0) || epsilon >= Rational(1)) throw DomainError("corollary3_W needs 0 < epsilon < 1");
  const double nd = static_cast<double>(n);
  const double value =
      (1.0 - epsilon.to_double()) * std::log(std::numbers::pi) * std::sqrt(nd) / std::log(nd);
  return static_cast<std::size_t>(std::floor(value));
}

Construction build_theorem1(const ConstructionSpec& spec) {
  if (spec.kind != ConstructionKind::theorem1) throw ArgumentError("build_theorem1 needs kind theorem1");
  spec.validate();
  Construction c;
  c.spec = spec;
  c.k = spec.k_override ? *spec.k_override : theorem1_k(spec.n);
  const GroundSet gs(spec.n);
  c.masks = build_triple(gs, spec.x_pivot);
  SeededGenerator rng(spec.seed);
  for (std::size_t i = 0; i < c.k; ++i) c.masks.push_back(sample_binomial_subset(gs, rng));
  finish(c);
  return c;
}

Construction build_theorem2(const ConstructionSpec& spec) {
  if (spec.kind != ConstructionKind::theorem2 && spec.kind != ConstructionKind::corollary3) {
    throw ArgumentError("build_theorem2 needs kind theorem2 or corollary3");
  }
  spec.validate();
  Construction c;
  c.spec = spec;
  c.k = spec.k_override ? *spec.k_override : theorem2_k(spec.n, *spec.epsilon);
  if (spec.kind == ConstructionKind::corollary3) c.W = corollary3_W(spec.n, *spec.epsilon);
  const GroundSet gs(spec.n);
  SeededGenerator rng(spec.seed);
  c.masks.reserve(2 * c.k);
  for (std::size_t i = 0; i < c.k; ++i) {
    auto r = sample_binomial_subset(gs, rng);
    auto rc = r.complement();
    c.masks.push_back(std::move(r));
    c.masks.push_back(std::move(rc));
  }
  finish(c);
  return c;
}

Construction build_construction(const ConstructionSpec& spec) {
  switch (spec.kind) {
    case ConstructionKind::triple: {
      spec.validate();
      Construction c;
      c.spec = spec;
      c.masks = build_triple(GroundSet(spec.n), spec.x_pivot);
      finish(c);
      return c;
    }
    case ConstructionKind::theorem1:
      return build_theorem1(spec);
    case ConstructionKind::theorem2:
    case ConstructionKind::corollary3:
      return build_theorem2(spec);
  }
  throw ArgumentError("unknown construction kind");
}

}  // namespace jacres
