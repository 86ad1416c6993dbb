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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jacres/bounds.hpp"
#include "jacres/construct.hpp"
#include "jacres/dimension.hpp"
#include "jacres/resolve.hpp"

namespace jacres {

struct ExperimentConfig {
  ConstructionKind kind = ConstructionKind::theorem1;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::optional<Rational> epsilon;
  std::optional<Scope> scope;  // defaults per kind, see default_scope
  std::optional<std::size_t> W;
  std::optional<std::size_t> k_override;
  std::size_t workers = 1;
  std::size_t enumeration_limit = kDefaultEnumerationLimit;

  void validate() const;
};

// theorem1 -> all_pairs, triple/theorem2 -> different_size_only,
// corollary3 -> size_at_most_W.
Scope default_scope(ConstructionKind kind);

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool resolving = false;
  bool necessary_conditions_pass = false;
  std::optional<std::pair<SubsetMask, SubsetMask>> witness;
};

struct ExperimentSummary {
  ExperimentConfig config;
  Scope scope = Scope::all_pairs;
  std::optional<std::size_t> W;
  std::size_t k = 0;
  std::size_t landmarks = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::vector<TrialOutcome> failures;
  std::string bound_name;  // "sigma1", "sigma2", "sigma3" or empty
  std::optional<LogProb> bound;
  double wall_seconds = 0.0;
};

// Seed of trial t: the base seed XOR t.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial);

// Builds and exhaustively verifies `trials` independent constructions.
ExperimentSummary run_experiment(const ExperimentConfig& config);

// Data fields only; timing goes under "metadata".
nlohmann::json experiment_to_json(const ExperimentSummary& s);

struct Table1Entry {
  std::size_t n = 0;
  IchResult ich;
  bool verified = false;
  std::optional<Table1Row> reference;
  std::optional<std::size_t> exact_beta;
  std::optional<std::size_t> lower_bound;
};

struct Table1Options {
  std::size_t workers = 1;
  std::size_t ich_limit = kDefaultIchLimit;
  std::size_t exact_limit = kDefaultExactLimit;
};

// ICH for n = 1..max_n with exhaustive verification of each result.
std::vector<Table1Entry> run_table1(std::size_t max_n, const Table1Options& options = {});

// n,ich_size,table1_size,exact_beta,avg_cardinality,table1_avg_cardinality,lower_bound,verified
void write_table1_csv(const std::vector<Table1Entry>& rows, std::ostream& out);
nlohmann::json table1_to_json(const std::vector<Table1Entry>& rows);

}  // namespace jacres
