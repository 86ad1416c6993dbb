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

#include "jacres/bounds.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "jacres/errors.hpp"

namespace jacres {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

void check_rho_args(std::size_t i, std::size_t j, std::size_t n) {
  if (i < 1 || i > n || j >= i || i + j > n) {
    throw DomainError("rho needs 1 <= i <= n, 0 <= j < i, i + j <= n (got i=" + std::to_string(i) +
                      ", j=" + std::to_string(j) + ", n=" + std::to_string(n) + ")");
  }
}

// Visits every (p, q, s) with p = |u r|, q = |v r|, s = |r \ (u v)| that
// satisfies the rho event. For fixed (p, q) at most one |r| works.
template <typename Visit>
void for_each_rho_triple(std::size_t i, std::size_t j, std::size_t n, Visit&& visit) {
  const auto ii = static_cast<std::int64_t>(i);
  const auto jj = static_cast<std::int64_t>(j);
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t rest = nn - ii - jj;
  const std::int64_t target = (ii - jj) * nn;
  for (std::int64_t p = 0; p <= ii; ++p) {
    for (std::int64_t q = 0; q <= jj; ++q) {
      const std::int64_t diff = (jj - 2 * q) - (ii - 2 * p);
      if (diff == 0 || target % diff != 0) continue;
      const std::int64_t delta_x = target / diff;  // n - 2|r|
      if ((nn - delta_x) % 2 != 0) continue;
      const std::int64_t size_r = (nn - delta_x) / 2;
      const std::int64_t s = size_r - p - q;
      if (s < 0 || s > rest) continue;
      visit(static_cast<std::size_t>(p), static_cast<std::size_t>(q), static_cast<std::size_t>(s));
    }
  }
}

unsigned __int128 binom128(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

class LogChooseTable {
 public:
  explicit LogChooseTable(std::size_t n) : n_(n), values_((n + 1) * (n + 1), kNegInf) {
    for (std::size_t a = 0; a <= n; ++a) {
      for (std::size_t b = 0; b <= a; ++b) values_[a * (n + 1) + b] = log_binomial(a, b);
    }
  }
  double operator()(std::size_t a, std::size_t b) const { return values_[a * (n_ + 1) + b]; }

 private:
  std::size_t n_;
  std::vector<double> values_;
};

double rho_from_table(std::size_t i, std::size_t j, std::size_t n, const LogChooseTable& lc) {
  if (n <= 62) return std::ldexp(static_cast<double>(rho_exact_count(i, j, n)), -static_cast<int>(n));
  const double log_half_n = -static_cast<double>(n) * std::numbers::ln2;
  double total = 0.0;
  for_each_rho_triple(i, j, n, [&](std::size_t p, std::size_t q, std::size_t s) {
    total += std::exp(lc(i, p) + lc(j, q) + lc(n - i - j, s) + log_half_n);
  });
  return total;
}

double log_sigma1_term(std::size_t n, std::size_t k, std::size_t i) {
  return log_trinomial(n, i, i) + static_cast<double>(k) * log_equal_size_collision_prob(i);
}

}  // namespace

double LogProb::value() const { return std::exp(log_value); }

double log_sum_exp(std::span<const double> terms) {
  if (terms.empty()) return kNegInf;
  std::vector<double> level(terms.begin(), terms.end());
  while (level.size() > 1) {
    std::vector<double> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t t = 0; t + 1 < level.size(); t += 2) next.push_back(log_add(level[t], level[t + 1]));
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return kNegInf;
  const auto lg = [](std::size_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
  return lg(n) - lg(k) - lg(n - k);
}

double log_trinomial(std::size_t n, std::size_t a, std::size_t b) {
  if (a + b > n) return kNegInf;
  const auto lg = [](std::size_t x) { return std::lgamma(static_cast<double>(x) + 1.0); };
  return lg(n) - lg(a) - lg(b) - lg(n - a - b);
}

PigeonholeProfile pigeonhole_profile(std::size_t n) {
  if (n <= 1) throw DomainError("pigeonhole lower bound needs n >= 2");
  using boost::multiprecision::cpp_int;
  PigeonholeProfile prof;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = log_binomial(n, i) / std::log(static_cast<double>(i) + 1.0);
    auto bound = static_cast<std::size_t>(std::ceil(v));
    const double nearest = std::round(v);
    if (std::abs(v - nearest) < 1e-9) {
      // Settle C(n,i) <= (i+1)^m exactly when rounding could flip the ceiling.
      const auto m = static_cast<unsigned>(nearest);
      cpp_int binom = 1;
      for (std::size_t t = 1; t <= i; ++t) binom = binom * (n - i + t) / t;
      cpp_int power = boost::multiprecision::pow(cpp_int(i + 1), m);
      bound = binom <= power ? m : m + 1;
    }
    if (i == 1 || v > prof.value) {
      prof.value = v;
      prof.argmax = i;
    }
    prof.bound = std::max(prof.bound, bound);
  }
  return prof;
}

std::size_t pigeonhole_lower_bound(std::size_t n) { return pigeonhole_profile(n).bound; }

double pigeonhole_half_variant(std::size_t n) {
  if (n <= 1) throw DomainError("pigeonhole lower bound needs n >= 2");
  return log_binomial(n, n / 2) / std::log(static_cast<double>(n) / 2.0 + 1.0);
}

Rational equal_size_collision_prob(std::size_t i) {
  if (i == 0) throw DomainError("collision probability needs i >= 1");
  if (i > 31) throw DomainError("exact collision probability limited to i <= 31; use the log form");
  const auto num = static_cast<std::int64_t>(binom128(2 * i, i));
  const auto den = static_cast<std::int64_t>(std::uint64_t{1} << (2 * i));
  return Rational(num, den);
}

double log_equal_size_collision_prob(std::size_t i) {
  if (i == 0) throw DomainError("collision probability needs i >= 1");
  return log_binomial(2 * i, i) - 2.0 * static_cast<double>(i) * std::numbers::ln2;
}

LogProb sigma1_bound(std::size_t n, std::size_t k) {
  if (n < 2) throw DomainError("sigma1 needs n >= 2");
  if (k < 1) throw DomainError("sigma1 needs k >= 1");
  std::vector<double> terms;
  for (std::size_t i = 1; i <= n / 2; ++i) terms.push_back(log_sigma1_term(n, k, i));
  return LogProb{log_sum_exp(terms)};
}

LogProb sigma3_bound(std::size_t n, std::size_t k, std::size_t W) {
  if (W < 1 || W > n / 2) {
    throw DomainError("sigma3 needs 1 <= W <= floor(n/2) (got W=" + std::to_string(W) + ")");
  }
  std::vector<double> terms;
  for (std::size_t i = 1; i <= W; ++i) terms.push_back(log_sigma1_term(n, k, i));
  return LogProb{log_sum_exp(terms)};
}

double sigma3_log_envelope(std::size_t n, const Rational& epsilon) {
  return -2.0 * epsilon.to_double() * std::sqrt(static_cast<double>(n)) * std::log(std::numbers::pi);
}

std::uint64_t rho_exact_count(std::size_t i, std::size_t j, std::size_t n) {
  check_rho_args(i, j, n);
  if (n > 62) throw DomainError("exact rho count limited to n <= 62");
  unsigned __int128 count = 0;
  for_each_rho_triple(i, j, n, [&](std::size_t p, std::size_t q, std::size_t s) {
    count += binom128(i, p) * binom128(j, q) * binom128(n - i - j, s);
  });
  return static_cast<std::uint64_t>(count);
}

double rho_exact(std::size_t i, std::size_t j, std::size_t n) {
  check_rho_args(i, j, n);
  if (n <= 62) return std::ldexp(static_cast<double>(rho_exact_count(i, j, n)), -static_cast<int>(n));
  return rho_from_table(i, j, n, LogChooseTable(n));
}

double rho_hoeffding_tau(std::size_t i, std::size_t j, std::size_t n) {
  check_rho_args(i, j, n);
  const double di = static_cast<double>(i);
  const double dj = static_cast<double>(j);
  return (di - dj) / 2.0 * std::sqrt(static_cast<double>(n) / (di + dj));
}

double rho_hoeffding_bound(std::size_t i, std::size_t j, std::size_t n) {
  return 4.0 * std::exp(-rho_hoeffding_tau(i, j, n));
}

double rho_uniform_bound(std::size_t n) { return 4.0 * std::exp(-std::sqrt(static_cast<double>(n)) / 2.0); }

LogProb sigma2_bound(std::size_t n, std::size_t k, const Sigma2Options& options) {
  if (n < 2) throw DomainError("sigma2 needs n >= 2");
  if (n > options.limit) {
    throw ResourceError("sigma2 at n=" + std::to_string(n) + " exceeds the limit n<=" + std::to_string(options.limit));
  }
  // Row i holds cells j = 0 .. min(i-1, n-i); offsets fix the reduction order.
  std::vector<std::size_t> offset(n + 2, 0);
  for (std::size_t i = 1; i <= n; ++i) offset[i + 1] = offset[i] + std::min(i - 1, n - i) + 1;
  std::vector<double> terms(offset[n + 1], kNegInf);
  const LogChooseTable lc(n);
  const double kd = static_cast<double>(k);

  auto fill_rows = [&](std::size_t first, std::size_t step) {
    for (std::size_t i = first; i <= n; i += step) {
      for (std::size_t j = 0; j <= std::min(i - 1, n - i); ++j) {
        // rho <= 1, so the Hoeffding substitute is capped there.
        const double rho = options.variant == RhoVariant::exact ? rho_from_table(i, j, n, lc)
                                                                : std::min(1.0, rho_hoeffding_bound(i, j, n));
        double term = log_trinomial(n, i, j);
        if (k > 0) term = rho == 0.0 ? kNegInf : term + kd * std::log(rho);
        terms[offset[i] + j] = term;
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, n));
  if (workers == 1) {
    fill_rows(1, 1);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back([&, w] { fill_rows(1 + w, workers); });
  }
  return LogProb{log_sum_exp(terms)};
}

BoundReport bound_report(std::size_t n, std::size_t k, std::optional<std::size_t> W, bool with_rho_table,
                         const Sigma2Options& options) {
  BoundReport r;
  r.n = n;
  r.k = k;
  r.sigma1 = sigma1_bound(n, k);
  auto exact = options;
  exact.variant = RhoVariant::exact;
  auto hoeff = options;
  hoeff.variant = RhoVariant::hoeffding;
  r.sigma2_exact = sigma2_bound(n, k, exact);
  r.sigma2_hoeffding = sigma2_bound(n, k, hoeff);
  if (W) {
    r.W = W;
    r.sigma3 = sigma3_bound(n, k, *W);
  }
  if (with_rho_table) {
    r.rho_table.emplace();
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < i && i + j <= n; ++j) (*r.rho_table)[{i, j}] = rho_exact(i, j, n);
    }
  }
  return r;
}

}  // namespace jacres
