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
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jacres/construct.hpp"
#include "jacres/setcore.hpp"

namespace jacres {

// Hex form of a mask: ceil(n/64) groups of 16 lowercase hex digits, word 0
// (elements 0..63) first; each group is its word written most significant
// nibble first. n = 4, {0, 2} -> "0000000000000005".
std::string mask_to_hex(const SubsetMask& mask);
SubsetMask mask_from_hex(std::size_t n, std::string_view hex);

// {"n", "kind", "seed", "k", "masks": [hex...]} plus "epsilon" ("p/q") and
// "W" when present.
nlohmann::json construction_to_json(const Construction& c);

struct ConstructionFile {
  std::size_t n = 0;
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::optional<std::string> epsilon;
  std::optional<std::size_t> W;
  std::vector<SubsetMask> masks;
};

ConstructionFile construction_from_json(const nlohmann::json& j);

// Lowercase, split on whitespace.
std::vector<std::string> tokenize(std::string_view line);

// One token per line; blank lines are skipped. Empty or duplicated lexicons
// throw ArgumentError.
GroundSet read_lexicon(std::istream& in);

struct BagOfWords {
  std::string doc_id;
  std::set<std::string> tokens;   // in-lexicon tokens only
  std::size_t dropped_tokens = 0;  // tokens missing from the lexicon
};

BagOfWords make_bag_of_words(std::string doc_id, std::string_view line, const GroundSet& lexicon);
SubsetMask to_mask(const BagOfWords& bag, const GroundSet& lexicon);

struct EmbeddedDocument {
  std::size_t index = 0;
  BagOfWords bag;
  std::vector<RationalDistance> distances;
};

struct Embedding {
  std::size_t landmark_count = 0;
  std::vector<EmbeddedDocument> rows;
  std::vector<std::string> warnings;
};

// One row per input line: d(doc|R) with doc the set of its lexicon tokens.
Embedding embed_documents(const GroundSet& lexicon, std::istream& docs, std::span<const SubsetMask> landmarks);

// Header "doc,r0,r1,..."; cells are "num/den" or 17-significant-digit decimals.
void write_embedding_csv(const Embedding& e, std::ostream& out, bool decimal);
nlohmann::json embedding_to_json(const Embedding& e, bool decimal);

std::string format_decimal(double value);

}  // namespace jacres
