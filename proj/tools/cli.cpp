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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "jacres/bounds.hpp"
#include "jacres/construct.hpp"
#include "jacres/dimension.hpp"
#include "jacres/errors.hpp"
#include "jacres/experiment.hpp"
#include "jacres/io.hpp"
#include "jacres/resolve.hpp"

namespace jacres::cli {
namespace {

struct GlobalFlags {
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::optional<std::string> epsilon;
  std::optional<std::string> scope;
  std::optional<std::size_t> W;
  std::optional<std::size_t> k_override;
  std::size_t workers = 1;
  std::optional<std::string> format;
  std::optional<std::string> output;
  bool unsafe_limits = false;
  bool decimal = false;
  bool expect_resolving = false;
};

struct Limits {
  std::size_t verify;
  std::size_t ich;
  std::size_t exact;
  std::size_t sigma2;
};

Limits limits_for(const GlobalFlags& g) {
  if (g.unsafe_limits) return {kHardEnumerationLimit, 20, 6, 2000};
  return {kDefaultEnumerationLimit, kDefaultIchLimit, kDefaultExactLimit, kDefaultSigma2Limit};
}

std::size_t require_n(const GlobalFlags& g) {
  if (!g.n) throw ArgumentError("--n is required");
  return *g.n;
}

std::optional<Rational> epsilon_of(const GlobalFlags& g) {
  if (!g.epsilon) return std::nullopt;
  return Rational::parse(*g.epsilon);
}

bool wants_json(const GlobalFlags& g, bool json_by_default) {
  if (!g.format) return json_by_default;
  if (*g.format == "json") return true;
  if (*g.format == "csv") return false;
  throw ArgumentError("--format must be csv or json");
}

// Writes to --output when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const GlobalFlags& g, std::ostream& fallback) : out_(&fallback) {
    if (g.output) {
      file_.open(*g.output, std::ios::binary);
      if (!file_) throw ArgumentError("cannot open output file '" + *g.output + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json report_to_json(const ResolutionReport& r, const NecessaryConditionsReport& nc) {
  nlohmann::json j;
  j["resolving"] = r.resolving;
  j["scope"] = std::string(to_string(r.scope));
  j["W"] = r.W ? nlohmann::json(*r.W) : nlohmann::json(nullptr);
  j["pairs_checked"] = r.pairs_checked;
  j["masks_enumerated"] = r.masks_enumerated;
  j["witness"] = r.witness ? nlohmann::json{mask_to_hex(r.witness->first), mask_to_hex(r.witness->second)}
                           : nlohmann::json(nullptr);
  j["necessary_conditions"] = {{"separates_points", nc.separates_points},
                               {"uncovered_elements", nc.uncovered_elements},
                               {"passes", nc.passes}};
  return j;
}

std::string log_cell(const LogProb& p) { return format_decimal(p.log_value); }

ConstructionSpec spec_from_flags(const GlobalFlags& g, const std::string& kind, std::size_t pivot) {
  ConstructionSpec spec;
  spec.kind = parse_kind(kind);
  spec.n = require_n(g);
  spec.epsilon = epsilon_of(g);
  spec.x_pivot = pivot;
  spec.seed = g.seed;
  spec.k_override = g.k_override;
  return spec;
}

int cmd_dimension(const GlobalFlags& g, std::ostream& out) {
  const auto n = require_n(g);
  const auto lim = limits_for(g);
  const auto res = exact_metric_dimension(GroundSet(n), ExactOptions{lim.exact});
  Sink sink(g, out);
  if (wants_json(g, true)) {
    nlohmann::json j{{"n", n}, {"beta", res.beta}, {"sets_examined", res.sets_examined}, {"sets_pruned", res.sets_pruned}};
    auto w = nlohmann::json::array();
    for (const auto& m : res.witness_set) w.push_back(mask_to_hex(m));
    j["witness_set"] = std::move(w);
    if (n >= 2) j["lower_bound"] = pigeonhole_lower_bound(n);
    sink.stream() << j.dump(2) << '\n';
  } else {
    sink.stream() << "n,beta,sets_examined,sets_pruned,witness_set\n" << n << ',' << res.beta << ','
                  << res.sets_examined << ',' << res.sets_pruned << ',';
    for (std::size_t i = 0; i < res.witness_set.size(); ++i) {
      sink.stream() << (i ? ";" : "") << mask_to_hex(res.witness_set[i]);
    }
    sink.stream() << '\n';
  }
  return kExitOk;
}

int cmd_ich(const GlobalFlags& g, std::ostream& out) {
  const auto n = require_n(g);
  const auto lim = limits_for(g);
  const auto res = ich_greedy(GroundSet(n), IchOptions{lim.ich, g.workers});
  VerifyOptions vo;
  vo.workers = g.workers;
  vo.enumeration_limit = std::max(lim.verify, lim.ich);
  const bool verified = verify_resolving(res.landmarks, vo).resolving;
  Sink sink(g, out);
  if (wants_json(g, true)) {
    nlohmann::json j{{"n", n},
                     {"size", res.size},
                     {"avg_cardinality", res.avg_landmark_cardinality.to_string()},
                     {"verified", verified}};
    auto trace = nlohmann::json::array();
    auto lm = nlohmann::json::array();
    for (const auto& s : res.entropy_trace) {
      trace.push_back({{"iteration", s.iteration}, {"landmark", mask_to_hex(s.landmark)}, {"entropy", s.entropy}});
      lm.push_back(mask_to_hex(s.landmark));
    }
    j["landmarks"] = std::move(lm);
    j["entropy_trace"] = std::move(trace);
    sink.stream() << j.dump(2) << '\n';
  } else {
    sink.stream() << "iteration,landmark,cardinality,entropy\n";
    for (const auto& s : res.entropy_trace) {
      sink.stream() << s.iteration << ',' << mask_to_hex(s.landmark) << ',' << s.landmark.cardinality() << ','
                    << format_decimal(s.entropy) << '\n';
    }
  }
  return verified ? kExitOk : kExitInternal;
}

int cmd_construct(const GlobalFlags& g, const std::string& kind, std::size_t pivot, bool verify, std::ostream& out,
                  std::ostream& err) {
  const auto c = build_construction(spec_from_flags(g, kind, pivot));
  for (const auto& w : c.warnings) err << "warning: " << w << '\n';
  const auto json = construction_to_json(c);
  int code = kExitOk;
  if (verify) {
    // Re-verify from the serialized masks.
    const auto file = construction_from_json(nlohmann::json::parse(json.dump()));
    VerifyOptions vo;
    vo.scope = g.scope ? parse_scope(*g.scope) : default_scope(c.spec.kind);
    vo.W = g.W ? g.W : c.W;
    vo.workers = g.workers;
    vo.enumeration_limit = limits_for(g).verify;
    const auto report = verify_resolving(file.masks, vo);
    err << (report.resolving ? "verified: " : "NOT resolving: ") << to_string(report.scope) << ", "
        << report.pairs_checked << " pairs checked\n";
    if (!report.resolving && g.expect_resolving) code = kExitNotResolving;
  }
  Sink sink(g, out);
  if (wants_json(g, true)) {
    sink.stream() << json.dump(2) << '\n';
  } else {
    sink.stream() << "index,mask,cardinality\n";
    for (std::size_t i = 0; i < c.masks.size(); ++i) {
      sink.stream() << i << ',' << mask_to_hex(c.masks[i]) << ',' << c.masks[i].cardinality() << '\n';
    }
  }
  return code;
}

int cmd_verify(const GlobalFlags& g, const std::string& input, std::ostream& out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(input));
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError("'" + input + "' is not valid JSON: " + e.what());
  }
  const auto file = construction_from_json(j);
  VerifyOptions vo;
  if (g.scope) {
    vo.scope = parse_scope(*g.scope);
  } else {
    try {
      vo.scope = default_scope(parse_kind(file.kind));
    } catch (const ArgumentError&) {
      vo.scope = Scope::all_pairs;
    }
  }
  vo.W = g.W ? g.W : file.W;
  vo.workers = g.workers;
  vo.enumeration_limit = limits_for(g).verify;
  const auto report = verify_resolving(file.masks, vo);
  const auto nc = check_necessary_conditions(file.masks);
  Sink sink(g, out);
  if (wants_json(g, true)) {
    sink.stream() << report_to_json(report, nc).dump(2) << '\n';
  } else {
    sink.stream() << "resolving,scope,W,pairs_checked,witness_a,witness_b,necessary_conditions_pass\n"
                  << (report.resolving ? "true" : "false") << ',' << to_string(report.scope) << ',';
    if (report.W) sink.stream() << *report.W;
    sink.stream() << ',' << report.pairs_checked << ',';
    if (report.witness) sink.stream() << mask_to_hex(report.witness->first) << ',' << mask_to_hex(report.witness->second);
    else sink.stream() << ',';
    sink.stream() << ',' << (nc.passes ? "true" : "false") << '\n';
  }
  if (!report.resolving && g.expect_resolving) return kExitNotResolving;
  return kExitOk;
}

int cmd_bounds(const GlobalFlags& g, std::vector<std::size_t> ks, bool rho_table, std::ostream& out) {
  const auto n = require_n(g);
  const auto eps = epsilon_of(g);
  if (ks.empty()) {
    if (g.k_override) ks.push_back(*g.k_override);
    else if (eps) ks.push_back(theorem2_k(n, *eps));
    else ks.push_back(theorem1_k(n));
  }
  std::optional<std::size_t> W = g.W;
  if (!W && eps && *eps < Rational(1) && n >= 2) W = corollary3_W(n, *eps);
  if (W && (*W < 1 || *W > n / 2)) W.reset();
  Sigma2Options so;
  so.limit = limits_for(g).sigma2;
  so.workers = g.workers;

  std::vector<BoundReport> reports;
  for (auto k : ks) reports.push_back(bound_report(n, k, W, rho_table, so));

  Sink sink(g, out);
  if (wants_json(g, false)) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) {
      nlohmann::json j{{"n", r.n},
                       {"k", r.k},
                       {"log_sigma1", r.sigma1.log_value},
                       {"log_sigma2_exact", r.sigma2_exact.log_value},
                       {"log_sigma2_hoeffding", r.sigma2_hoeffding.log_value}};
      j["W"] = r.W ? nlohmann::json(*r.W) : nlohmann::json(nullptr);
      j["log_sigma3"] = r.sigma3 ? nlohmann::json(r.sigma3->log_value) : nlohmann::json(nullptr);
      if (r.W && eps) j["log_sigma3_envelope"] = sigma3_log_envelope(n, *eps);
      if (r.rho_table) {
        auto rows = nlohmann::json::array();
        for (const auto& [ij, v] : *r.rho_table) rows.push_back({ij.first, ij.second, v});
        j["rho"] = std::move(rows);
      }
      arr.push_back(std::move(j));
    }
    sink.stream() << arr.dump(2) << '\n';
  } else {
    sink.stream() << "n,k,log_sigma1,log_sigma2_exact,log_sigma2_hoeffding,W,log_sigma3\n";
    for (const auto& r : reports) {
      sink.stream() << r.n << ',' << r.k << ',' << log_cell(r.sigma1) << ',' << log_cell(r.sigma2_exact) << ','
                    << log_cell(r.sigma2_hoeffding) << ',';
      if (r.W) sink.stream() << *r.W;
      sink.stream() << ',';
      if (r.sigma3) sink.stream() << log_cell(*r.sigma3);
      sink.stream() << '\n';
    }
  }
  return kExitOk;
}

int cmd_embed(GlobalFlags g, const std::string& lexicon_path, const std::string& docs_path, const std::string& kind,
              std::size_t pivot, std::ostream& out, std::ostream& err) {
  std::ifstream lex(lexicon_path);
  if (!lex) throw ArgumentError("cannot open lexicon '" + lexicon_path + "'");
  const GroundSet lexicon = read_lexicon(lex);
  if (g.n && *g.n != lexicon.size()) throw ArgumentError("--n disagrees with the lexicon size");
  g.n = lexicon.size();
  const auto c = build_construction(spec_from_flags(g, kind, pivot));
  for (const auto& w : c.warnings) err << "warning: " << w << '\n';
  std::ifstream docs(docs_path);
  if (!docs) throw ArgumentError("cannot open documents '" + docs_path + "'");
  const auto e = embed_documents(lexicon, docs, c.masks);
  for (const auto& w : e.warnings) err << "warning: " << w << '\n';
  Sink sink(g, out);
  if (wants_json(g, false)) {
    auto j = embedding_to_json(e, g.decimal);
    j["construction"] = construction_to_json(c);
    sink.stream() << j.dump(2) << '\n';
  } else {
    write_embedding_csv(e, sink.stream(), g.decimal);
  }
  return kExitOk;
}

int cmd_experiment(const GlobalFlags& g, const std::string& kind, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  config.kind = parse_kind(kind);
  config.n = require_n(g);
  config.seed = g.seed;
  config.trials = g.trials;
  config.epsilon = epsilon_of(g);
  if (g.scope) config.scope = parse_scope(*g.scope);
  config.W = g.W;
  config.k_override = g.k_override;
  config.workers = g.workers;
  config.enumeration_limit = limits_for(g).verify;
  const auto s = run_experiment(config);
  Sink sink(g, out);
  if (wants_json(g, true)) {
    sink.stream() << experiment_to_json(s).dump(2) << '\n';
  } else {
    sink.stream() << "kind,n,k,landmarks,scope,W,trials,successes,success_rate,bound_name,log_bound\n"
                  << to_string(s.config.kind) << ',' << s.config.n << ',' << s.k << ',' << s.landmarks << ','
                  << to_string(s.scope) << ',';
    if (s.W) sink.stream() << *s.W;
    sink.stream() << ',' << s.config.trials << ',' << s.successes << ',' << format_decimal(s.success_rate) << ','
                  << s.bound_name << ',';
    if (s.bound) sink.stream() << log_cell(*s.bound);
    sink.stream() << '\n';
    err << "wall_seconds: " << s.wall_seconds << '\n';
  }
  if (g.expect_resolving && !s.failures.empty()) return kExitNotResolving;
  return kExitOk;
}

int cmd_table1(const GlobalFlags& g, std::size_t max_n, std::ostream& out) {
  const auto lim = limits_for(g);
  Table1Options opts;
  opts.workers = g.workers;
  opts.ich_limit = lim.ich;
  opts.exact_limit = lim.exact;
  const auto rows = run_table1(max_n, opts);
  Sink sink(g, out);
  if (wants_json(g, false)) {
    sink.stream() << table1_to_json(rows).dump(2) << '\n';
  } else {
    write_table1_csv(rows, sink.stream());
  }
  for (const auto& r : rows) {
    if (!r.verified) return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolving sets and metric dimension of Jaccard spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--n", g.n, "Ground-set size |X|");
  app.add_option("--seed", g.seed, "Base 64-bit seed");
  app.add_option("--trials", g.trials, "Number of experiment trials")->check(CLI::PositiveNumber);
  app.add_option("--epsilon", g.epsilon, "Rational epsilon, e.g. 1/10");
  app.add_option("--scope", g.scope, "all_pairs | equal_size_only | different_size_only | size_at_most_W");
  app.add_option("--W", g.W, "Size cap for scope size_at_most_W");
  app.add_option("--k-override", g.k_override, "Use this k instead of the formula");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "csv or json");
  app.add_option("--output", g.output, "Write data output to this file");
  app.add_flag("--unsafe-limits", g.unsafe_limits, "Raise enumeration limits");
  app.add_flag("--decimal", g.decimal, "Emit 17-significant-digit decimals instead of num/den");
  app.add_flag("--expect-resolving", g.expect_resolving, "Exit 4 when a non-resolving witness is found");

  auto* dimension = app.add_subcommand("dimension", "Exact metric dimension by exhaustive search");
  auto* ich = app.add_subcommand("ich", "Greedy entropy (ICH) resolving set");

  std::string kind;
  std::size_t pivot = 0;
  bool do_verify = false;
  auto* construct = app.add_subcommand("construct", "Build a landmark set and write it as JSON");
  construct->add_option("--kind", kind, "triple | theorem1 | theorem2 | corollary3")->required();
  construct->add_option("--pivot", pivot, "Pivot element for triple/theorem1");
  construct->add_flag("--verify", do_verify, "Verify the serialized landmarks");

  std::string input;
  auto* verify = app.add_subcommand("verify", "Verify a construction JSON file");
  verify->add_option("--input", input, "Construction JSON")->required();

  std::vector<std::size_t> ks;
  bool rho_table = false;
  auto* bounds = app.add_subcommand("bounds", "Union-bound table for sigma1/sigma2/sigma3");
  bounds->add_option("--k", ks, "Landmark counts (comma separated)")->delimiter(',');
  bounds->add_flag("--rho-table", rho_table, "Include rho(i,j,n) in JSON output");

  std::string lexicon_path;
  std::string docs_path;
  auto* embed = app.add_subcommand("embed", "Embed bag-of-words documents by distances to landmarks");
  embed->add_option("--lexicon", lexicon_path, "One token per line")->required();
  embed->add_option("--docs", docs_path, "One document per line")->required();
  embed->add_option("--kind", kind, "Construction kind")->required();
  embed->add_option("--pivot", pivot, "Pivot element for triple/theorem1");

  auto* experiment = app.add_subcommand("experiment", "Repeated construction + verification");
  experiment->add_option("--kind", kind, "Construction kind")->required();

  std::size_t max_n = 12;
  auto* table1 = app.add_subcommand("table1", "ICH sizes for n = 1..max_n");
  table1->add_option("--max-n", max_n, "Largest n");

  std::vector<std::string> argv_storage{"jacres"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (dimension->parsed()) return cmd_dimension(g, out);
    if (ich->parsed()) return cmd_ich(g, out);
    if (construct->parsed()) return cmd_construct(g, kind, pivot, do_verify, out, err);
    if (verify->parsed()) return cmd_verify(g, input, out);
    if (bounds->parsed()) return cmd_bounds(g, ks, rho_table, out);
    if (embed->parsed()) return cmd_embed(g, lexicon_path, docs_path, kind, pivot, out, err);
    if (experiment->parsed()) return cmd_experiment(g, kind, out, err);
    if (table1->parsed()) return cmd_table1(g, max_n, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitValidation;
}

}  // namespace jacres::cli
