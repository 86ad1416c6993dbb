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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jacres/bounds.hpp"
#include "jacres/construct.hpp"
#include "jacres/dimension.hpp"
#include "jacres/errors.hpp"
#include "jacres/experiment.hpp"
#include "jacres/io.hpp"
#include "jacres/resolve.hpp"
#include "jacres/setcore.hpp"

namespace py = pybind11;

namespace jacres {
namespace {

// Sets cross the boundary as lists of element indices in [0, n).
using Elements = std::vector<std::size_t>;

SubsetMask to_mask(std::size_t n, const Elements& e) { return SubsetMask::from_elements(n, e); }

std::vector<SubsetMask> to_masks(std::size_t n, const std::vector<Elements>& sets) {
  std::vector<SubsetMask> out;
  out.reserve(sets.size());
  for (const auto& s : sets) out.push_back(to_mask(n, s));
  return out;
}

std::vector<Elements> to_elements(const std::vector<SubsetMask>& masks) {
  std::vector<Elements> out;
  out.reserve(masks.size());
  for (const auto& m : masks) out.push_back(m.elements());
  return out;
}

// Structured results go through JSON so the Python side sees the same fields as the CLI.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::tuple jaccard_py(std::size_t n, const Elements& a, const Elements& b) {
  const auto d = jaccard(to_mask(n, a), to_mask(n, b));
  return py::make_tuple(d.num(), d.den());
}

py::dict verify_py(std::size_t n, const std::vector<Elements>& landmarks, const std::string& scope,
                   std::optional<std::size_t> W, std::size_t workers, std::size_t enumeration_limit) {
  const auto masks = to_masks(n, landmarks);
  VerifyOptions o;
  o.scope = parse_scope(scope);
  o.W = W;
  o.workers = workers;
  o.enumeration_limit = enumeration_limit;
  const auto r = verify_resolving(masks, o);
  const auto nc = check_necessary_conditions(masks);
  py::dict d;
  d["resolving"] = r.resolving;
  d["scope"] = std::string(to_string(r.scope));
  d["W"] = r.W ? py::cast(*r.W) : py::none();
  d["witness"] = r.witness ? py::cast(std::make_pair(r.witness->first.elements(), r.witness->second.elements()))
                           : py::none();
  d["pairs_checked"] = r.pairs_checked;
  d["necessary_conditions_pass"] = nc.passes;
  return d;
}

py::object construct_py(const std::string& kind, std::size_t n, std::uint64_t seed,
                        std::optional<std::string> epsilon, std::size_t x_pivot, std::optional<std::size_t> k) {
  ConstructionSpec s;
  s.kind = parse_kind(kind);
  s.n = n;
  s.seed = seed;
  if (epsilon) s.epsilon = Rational::parse(*epsilon);
  s.x_pivot = x_pivot;
  s.k_override = k;
  const auto c = build_construction(s);
  py::dict d;
  d["kind"] = std::string(to_string(c.spec.kind));
  d["n"] = n;
  d["seed"] = seed;
  d["k"] = c.k;
  d["W"] = c.W ? py::cast(*c.W) : py::none();
  d["landmarks"] = to_elements(c.masks);
  d["warnings"] = c.warnings;
  return d;
}

py::dict ich_py(std::size_t n, std::size_t limit, std::size_t workers) {
  const auto r = ich_greedy(GroundSet(n), IchOptions{limit, workers});
  py::dict d;
  d["size"] = r.size;
  d["landmarks"] = to_elements(r.landmarks);
  d["avg_landmark_cardinality"] = r.avg_landmark_cardinality.to_double();
  std::vector<double> trace;
  for (const auto& s : r.entropy_trace) trace.push_back(s.entropy);
  d["entropy_trace"] = trace;
  return d;
}

py::dict dimension_py(std::size_t n, std::size_t limit) {
  const auto r = exact_metric_dimension(GroundSet(n), ExactOptions{limit});
  py::dict d;
  d["beta"] = r.beta;
  d["witness_set"] = to_elements(r.witness_set);
  d["sets_examined"] = r.sets_examined;
  d["sets_pruned"] = r.sets_pruned;
  return d;
}

py::dict bounds_py(std::size_t n, std::size_t k, std::optional<std::size_t> W, std::size_t limit) {
  Sigma2Options o;
  o.limit = limit;
  const auto r = bound_report(n, k, W, false, o);
  py::dict d;
  d["n"] = n;
  d["k"] = k;
  d["log_sigma1"] = r.sigma1.log_value;
  d["log_sigma2_exact"] = r.sigma2_exact.log_value;
  d["log_sigma2_hoeffding"] = r.sigma2_hoeffding.log_value;
  d["W"] = r.W ? py::cast(*r.W) : py::none();
  d["log_sigma3"] = r.sigma3 ? py::cast(r.sigma3->log_value) : py::none();
  return d;
}

py::object experiment_py(const std::string& kind, std::size_t n, std::size_t trials, std::uint64_t seed,
                         std::optional<std::string> epsilon, std::size_t workers) {
  ExperimentConfig cfg;
  cfg.kind = parse_kind(kind);
  cfg.n = n;
  cfg.trials = trials;
  cfg.seed = seed;
  if (epsilon) cfg.epsilon = Rational::parse(*epsilon);
  cfg.workers = workers;
  return to_py(experiment_to_json(run_experiment(cfg)));
}

}  // namespace
}  // namespace jacres

PYBIND11_MODULE(_jacres, m) {
  using namespace jacres;
  using py::arg;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

  m.def("jaccard", &jaccard_py, arg("n"), arg("a"), arg("b"), "Reduced (num, den) Jaccard distance.");
  m.def("verify", &verify_py, arg("n"), arg("landmarks"), arg("scope") = "all_pairs", arg("W") = py::none(),
        arg("workers") = 1, arg("enumeration_limit") = kDefaultEnumerationLimit);
  m.def("construct", &construct_py, arg("kind"), arg("n"), arg("seed") = 0, arg("epsilon") = py::none(),
        arg("x_pivot") = 0, arg("k") = py::none());
  m.def("ich", &ich_py, arg("n"), arg("limit") = kDefaultIchLimit, arg("workers") = 1);
  m.def("metric_dimension", &dimension_py, arg("n"), arg("limit") = kDefaultExactLimit);
  m.def("bounds", &bounds_py, arg("n"), arg("k"), arg("W") = py::none(), arg("limit") = kDefaultSigma2Limit);
  m.def("experiment", &experiment_py, arg("kind"), arg("n"), arg("trials") = 1, arg("seed") = 0,
        arg("epsilon") = py::none(), arg("workers") = 1);
  m.def("theorem1_k", &theorem1_k, arg("n"));
  m.def("theorem2_k", [](std::size_t n, const std::string& eps) { return theorem2_k(n, Rational::parse(eps)); },
        arg("n"), arg("epsilon"));
  m.def("corollary3_W", [](std::size_t n, const std::string& eps) { return corollary3_W(n, Rational::parse(eps)); },
        arg("n"), arg("epsilon"));
  m.def("pigeonhole_lower_bound", &pigeonhole_lower_bound, arg("n"));
}
