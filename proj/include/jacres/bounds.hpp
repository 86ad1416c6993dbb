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
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "jacres/rational.hpp"

namespace jacres {

// Natural log of a non-negative quantity; -inf encodes zero.
struct LogProb {
  double log_value = -std::numeric_limits<double>::infinity();

  double value() const;
  bool is_zero() const { return log_value == -std::numeric_limits<double>::infinity(); }
};

// log(sum(exp(terms))) by pairwise reduction in index order, so the result
// does not depend on how the terms were produced.
double log_sum_exp(std::span<const double> terms);

double log_binomial(std::size_t n, std::size_t k);
// log n! / (a! b! (n-a-b)!)
double log_trinomial(std::size_t n, std::size_t a, std::size_t b);

struct PigeonholeProfile {
  std::size_t bound = 0;   // ceil of the maximum
  std::size_t argmax = 0;  // set size attaining the maximum
  double value = 0.0;      // max over 0 < i < n of ln C(n,i) / ln(i+1)
};

// Landmark count forced by counting distinct signatures of i-element sets.
// n <= 1 throws DomainError.
PigeonholeProfile pigeonhole_profile(std::size_t n);
std::size_t pigeonhole_lower_bound(std::size_t n);
// The single i = floor(n/2) term with ln(n/2 + 1) in the denominator.
double pigeonhole_half_variant(std::size_t n);

// P(<z, r> = 0) for z with i entries +1, i entries -1 and r ~ Binomial(X,1/2):
// C(2i, i) / 4^i. Exact for 1 <= i <= 31.
Rational equal_size_collision_prob(std::size_t i);
double log_equal_size_collision_prob(std::size_t i);

// sum_{i=1}^{floor(n/2)} C(n; i, i, n-2i) (C(2i,i)/4^i)^k
LogProb sigma1_bound(std::size_t n, std::size_t k);

// Sigma1 summand restricted to i <= W; 1 <= W <= floor(n/2).
LogProb sigma3_bound(std::size_t n, std::size_t k, std::size_t W);

// log of pi^(-2 epsilon sqrt(n)), the decay rate quoted for sigma3.
double sigma3_log_envelope(std::size_t n, const Rational& epsilon);

// rho(i, j, n): probability over r ~ Binomial(X,1/2) that
//   (n - 2|r|) * ((j - 2|v r|) - (i - 2|u r|)) == (i - j) * n
// for fixed disjoint u, v with |u| = i > j = |v|.
// Requires 1 <= i <= n, 0 <= j < i, i + j <= n; throws DomainError otherwise.
double rho_exact(std::size_t i, std::size_t j, std::size_t n);
// Number of r in 2^X satisfying the event; rho = count / 2^n. n <= 62.
std::uint64_t rho_exact_count(std::size_t i, std::size_t j, std::size_t n);

// tau = (i-j)/2 * sqrt(n/(i+j)); never below sqrt(n)/2.
double rho_hoeffding_tau(std::size_t i, std::size_t j, std::size_t n);
// 4 exp(-tau), unclamped.
double rho_hoeffding_bound(std::size_t i, std::size_t j, std::size_t n);
// 4 exp(-sqrt(n)/2), valid for every admissible (i, j).
double rho_uniform_bound(std::size_t n);

enum class RhoVariant { exact, hoeffding };

inline constexpr std::size_t kDefaultSigma2Limit = 200;

struct Sigma2Options {
  RhoVariant variant = RhoVariant::exact;
  std::size_t limit = kDefaultSigma2Limit;
  std::size_t workers = 1;
};

// sum over 1 <= i <= n, 0 <= j < i, i + j <= n of C(n; i, j, n-i-j) rho(i,j,n)^k
LogProb sigma2_bound(std::size_t n, std::size_t k, const Sigma2Options& options = {});

struct BoundReport {
  std::size_t n = 0;
  std::size_t k = 0;
  LogProb sigma1;
  LogProb sigma2_exact;
  LogProb sigma2_hoeffding;
  std::optional<std::size_t> W;
  std::optional<LogProb> sigma3;
  std::optional<std::map<std::pair<std::size_t, std::size_t>, double>> rho_table;
};

BoundReport bound_report(std::size_t n, std::size_t k, std::optional<std::size_t> W = std::nullopt,
                         bool with_rho_table = false, const Sigma2Options& options = {});

}  // namespace jacres
