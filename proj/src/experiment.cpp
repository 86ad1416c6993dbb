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

#include "jacres/experiment.hpp"

#include <chrono>
#include <ostream>

#include "jacres/errors.hpp"
#include "jacres/io.hpp"

namespace jacres {
namespace {

std::optional<std::pair<std::string, LogProb>> context_bound(const ExperimentConfig& config, std::size_t k,
                                                             std::optional<std::size_t> W) {
  const std::size_t n = config.n;
  if (n < 2 || k == 0) return std::nullopt;
  switch (config.kind) {
    case ConstructionKind::theorem1:
      return std::pair{std::string("sigma1"), sigma1_bound(n, k)};
    case ConstructionKind::theorem2:
      if (n > kDefaultSigma2Limit) return std::nullopt;
      return std::pair{std::string("sigma2"), sigma2_bound(n, k)};
    case ConstructionKind::corollary3:
      if (!W || *W < 1 || *W > n / 2) return std::nullopt;
      return std::pair{std::string("sigma3"), sigma3_bound(n, k, *W)};
    case ConstructionKind::triple:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  if (n < 1) throw ArgumentError("n must be >= 1");
  ConstructionSpec spec{kind, n, epsilon, 0, seed, k_override};
  spec.validate();
  const Scope s = scope.value_or(default_scope(kind));
  if (s == Scope::size_at_most_W && !W && kind != ConstructionKind::corollary3) {
    throw ArgumentError("scope size_at_most_W requires W");
  }
}

Scope default_scope(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::theorem1:
      return Scope::all_pairs;
    case ConstructionKind::triple:
    case ConstructionKind::theorem2:
      return Scope::different_size_only;
    case ConstructionKind::corollary3:
      return Scope::size_at_most_W;
  }
  return Scope::all_pairs;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial) { return base_seed ^ trial; }

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  ExperimentSummary summary;
  summary.config = config;
  summary.scope = config.scope.value_or(default_scope(config.kind));

  for (std::size_t t = 0; t < config.trials; ++t) {
    ConstructionSpec spec{config.kind, config.n, config.epsilon, 0, trial_seed(config.seed, t), config.k_override};
    const Construction c = build_construction(spec);
    summary.k = c.k;
    summary.landmarks = c.masks.size();
    summary.W = config.W ? config.W : c.W;

    // Verify what would be written to disk, not the in-memory list.
    const auto file = construction_from_json(construction_to_json(c));

    VerifyOptions vo;
    vo.scope = summary.scope;
    vo.W = summary.W;
    vo.workers = config.workers;
    vo.enumeration_limit = config.enumeration_limit;
    const auto report = verify_resolving(file.masks, vo);

    TrialOutcome outcome;
    outcome.trial = t;
    outcome.seed = spec.seed;
    outcome.resolving = report.resolving;
    outcome.necessary_conditions_pass = check_necessary_conditions(file.masks).passes;
    outcome.witness = report.witness;
    if (outcome.resolving) {
      ++summary.successes;
    } else {
      summary.failures.push_back(std::move(outcome));
    }
  }
  summary.success_rate = static_cast<double>(summary.successes) / static_cast<double>(config.trials);
  if (auto b = context_bound(config, summary.k, summary.W)) {
    summary.bound_name = b->first;
    summary.bound = b->second;
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return summary;
}

nlohmann::json experiment_to_json(const ExperimentSummary& s) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(s.config.kind));
  j["n"] = s.config.n;
  j["seed"] = s.config.seed;
  j["trials"] = s.config.trials;
  if (s.config.epsilon) j["epsilon"] = s.config.epsilon->to_string();
  j["scope"] = std::string(to_string(s.scope));
  j["W"] = s.W ? nlohmann::json(*s.W) : nlohmann::json(nullptr);
  j["k"] = s.k;
  j["landmarks"] = s.landmarks;
  j["successes"] = s.successes;
  j["success_rate"] = s.success_rate;
  auto failures = nlohmann::json::array();
  for (const auto& f : s.failures) {
    nlohmann::json fj{{"trial", f.trial},
                      {"seed", f.seed},
                      {"necessary_conditions_pass", f.necessary_conditions_pass}};
    if (f.witness) fj["witness"] = {mask_to_hex(f.witness->first), mask_to_hex(f.witness->second)};
    failures.push_back(std::move(fj));
  }
  j["failures"] = std::move(failures);
  if (s.bound) {
    j["bound"] = {{"name", s.bound_name}, {"log_value", s.bound->log_value}};
  } else {
    j["bound"] = nullptr;
  }
  j["metadata"] = {{"wall_seconds", s.wall_seconds}};
  return j;
}

std::vector<Table1Entry> run_table1(std::size_t max_n, const Table1Options& options) {
  if (max_n < 1) throw ArgumentError("max_n must be >= 1");
  if (max_n > options.ich_limit) {
    throw ResourceError("table1 up to n=" + std::to_string(max_n) + " exceeds the ICH limit n<=" +
                        std::to_string(options.ich_limit));
  }
  std::vector<Table1Entry> rows;
  for (std::size_t n = 1; n <= max_n; ++n) {
    Table1Entry e;
    e.n = n;
    const GroundSet gs(n);
    e.ich = ich_greedy(gs, IchOptions{options.ich_limit, options.workers});
    VerifyOptions vo;
    vo.workers = options.workers;
    vo.enumeration_limit = std::max(options.ich_limit, kDefaultEnumerationLimit);
    e.verified = verify_resolving(e.ich.landmarks, vo).resolving;
    e.reference = table1_reference(n);
    if (n <= options.exact_limit) e.exact_beta = exact_metric_dimension(gs, ExactOptions{options.exact_limit}).beta;
    if (n >= 2) e.lower_bound = pigeonhole_lower_bound(n);
    rows.push_back(std::move(e));
  }
  return rows;
}

void write_table1_csv(const std::vector<Table1Entry>& rows, std::ostream& out) {
  out << "n,ich_size,table1_size,exact_beta,avg_cardinality,table1_avg_cardinality,lower_bound,verified\n";
  for (const auto& e : rows) {
    out << e.n << ',' << e.ich.size << ',';
    if (e.reference) out << e.reference->size;
    out << ',';
    if (e.exact_beta) out << *e.exact_beta;
    out << ',' << format_decimal(e.ich.avg_landmark_cardinality.to_double()) << ',';
    if (e.reference) out << e.reference->avg_cardinality;
    out << ',';
    if (e.lower_bound) out << *e.lower_bound;
    out << ',' << (e.verified ? "true" : "false") << '\n';
  }
}

nlohmann::json table1_to_json(const std::vector<Table1Entry>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& e : rows) {
    nlohmann::json j;
    j["n"] = e.n;
    j["ich_size"] = e.ich.size;
    j["avg_cardinality"] = e.ich.avg_landmark_cardinality.to_string();
    j["table1_size"] = e.reference ? nlohmann::json(e.reference->size) : nlohmann::json(nullptr);
    j["table1_avg_cardinality"] =
        e.reference ? nlohmann::json(e.reference->avg_cardinality) : nlohmann::json(nullptr);
    j["exact_beta"] = e.exact_beta ? nlohmann::json(*e.exact_beta) : nlohmann::json(nullptr);
    j["lower_bound"] = e.lower_bound ? nlohmann::json(*e.lower_bound) : nlohmann::json(nullptr);
    j["verified"] = e.verified;
    auto lm = nlohmann::json::array();
    for (const auto& r : e.ich.landmarks) lm.push_back(mask_to_hex(r));
    j["landmarks"] = std::move(lm);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace jacres
