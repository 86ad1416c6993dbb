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

#include "jacres/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "jacres/errors.hpp"

namespace jacres {
namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <typename T>
T require(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ArgumentError(std::string("construction JSON lacks \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("construction JSON field \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string mask_to_hex(const SubsetMask& mask) {
  std::string out;
  out.reserve(mask.words().size() * 16);
  char buf[17];
  for (auto w : mask.words()) {
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(w));
    out += buf;
  }
  return out;
}

SubsetMask mask_from_hex(std::size_t n, std::string_view hex) {
  const std::size_t words = word_count(n);
  if (hex.size() != words * 16) {
    throw ArgumentError("hex mask has " + std::to_string(hex.size()) + " digits, expected " +
                        std::to_string(words * 16) + " for n=" + std::to_string(n));
  }
  std::vector<std::uint64_t> out(words);
  for (std::size_t w = 0; w < words; ++w) {
    const auto group = hex.substr(w * 16, 16);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(group.data(), group.data() + group.size(), value, 16);
    if (ec != std::errc{} || ptr != group.data() + group.size()) {
      throw ArgumentError("malformed hex mask '" + std::string(hex) + "'");
    }
    out[w] = value;
  }
  return SubsetMask::from_words(n, std::move(out));
}

nlohmann::json construction_to_json(const Construction& c) {
  nlohmann::json j;
  j["n"] = c.spec.n;
  j["kind"] = std::string(to_string(c.spec.kind));
  j["seed"] = c.spec.seed;
  j["k"] = c.k;
  if (c.spec.epsilon) j["epsilon"] = c.spec.epsilon->to_string();
  if (c.W) j["W"] = *c.W;
  auto masks = nlohmann::json::array();
  for (const auto& m : c.masks) masks.push_back(mask_to_hex(m));
  j["masks"] = std::move(masks);
  return j;
}

ConstructionFile construction_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("construction JSON must be an object");
  ConstructionFile f;
  f.n = require<std::size_t>(j, "n");
  if (f.n == 0) throw ArgumentError("construction JSON has n = 0");
  f.kind = require<std::string>(j, "kind");
  f.seed = require<std::uint64_t>(j, "seed");
  f.k = require<std::size_t>(j, "k");
  if (j.contains("epsilon")) f.epsilon = require<std::string>(j, "epsilon");
  if (j.contains("W")) f.W = require<std::size_t>(j, "W");
  for (const auto& hex : require<std::vector<std::string>>(j, "masks")) f.masks.push_back(mask_from_hex(f.n, hex));
  return f;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(lowercase(std::string(line.substr(start, i - start))));
  }
  return out;
}

GroundSet read_lexicon(std::istream& in) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    auto token = lowercase(trim(line));
    if (!token.empty()) labels.push_back(std::move(token));
  }
  if (labels.empty()) throw ArgumentError("lexicon is empty");
  return GroundSet(std::move(labels));
}

BagOfWords make_bag_of_words(std::string doc_id, std::string_view line, const GroundSet& lexicon) {
  BagOfWords bag;
  bag.doc_id = std::move(doc_id);
  for (auto& token : tokenize(line)) {
    if (lexicon.index_of(token)) {
      bag.tokens.insert(std::move(token));
    } else {
      ++bag.dropped_tokens;
    }
  }
  return bag;
}

SubsetMask to_mask(const BagOfWords& bag, const GroundSet& lexicon) {
  std::vector<std::size_t> elements;
  for (const auto& t : bag.tokens) {
    auto idx = lexicon.index_of(t);
    if (!idx) throw ArgumentError("token '" + t + "' is not in the lexicon");
    elements.push_back(*idx);
  }
  return SubsetMask::from_elements(lexicon.size(), elements);
}

Embedding embed_documents(const GroundSet& lexicon, std::istream& docs, std::span<const SubsetMask> landmarks) {
  if (landmarks.empty()) throw ArgumentError("embedding needs at least one landmark");
  for (const auto& r : landmarks) {
    if (r.dimension() != lexicon.size()) throw DimensionError("landmarks do not match the lexicon size");
  }
  Embedding e;
  e.landmark_count = landmarks.size();
  std::string line;
  std::size_t index = 0;
  while (std::getline(docs, line)) {
    EmbeddedDocument row;
    row.index = index;
    row.bag = make_bag_of_words(std::to_string(index), line, lexicon);
    const auto mask = to_mask(row.bag, lexicon);
    for (const auto& r : landmarks) row.distances.push_back(jaccard(mask, r));
    if (row.bag.dropped_tokens > 0) {
      e.warnings.push_back("document " + std::to_string(index) + ": dropped " +
                           std::to_string(row.bag.dropped_tokens) + " out-of-lexicon token(s)");
    }
    if (row.bag.tokens.empty()) {
      e.warnings.push_back("document " + std::to_string(index) + " has no lexicon tokens; embedded as the empty set");
    }
    e.rows.push_back(std::move(row));
    ++index;
  }
  return e;
}

std::string format_decimal(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_embedding_csv(const Embedding& e, std::ostream& out, bool decimal) {
  out << "doc";
  for (std::size_t l = 0; l < e.landmark_count; ++l) out << ",r" << l;
  out << '\n';
  for (const auto& row : e.rows) {
    out << row.index;
    for (const auto& d : row.distances) out << ',' << (decimal ? format_decimal(d.to_double()) : d.to_string());
    out << '\n';
  }
}

nlohmann::json embedding_to_json(const Embedding& e, bool decimal) {
  auto rows = nlohmann::json::array();
  for (const auto& row : e.rows) {
    auto dists = nlohmann::json::array();
    for (const auto& d : row.distances) {
      if (decimal) {
        dists.push_back(d.to_double());
      } else {
        dists.push_back(nlohmann::json::array({d.num(), d.den()}));
      }
    }
    rows.push_back({{"doc", row.index}, {"distances", std::move(dists)}});
  }
  return {{"landmarks", e.landmark_count}, {"rows", std::move(rows)}};
}

}  // namespace jacres
