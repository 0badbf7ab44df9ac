// Copyright 2026 The tfqkd Authors
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

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace tfqkd {

Probability::Probability(double v) : v_(v) {
  if (std::isnan(v_) || v_ < -kProbabilityTol || v_ > 1.0 + kProbabilityTol) {
    throw std::domain_error("probability outside [0,1]: " + std::to_string(v));
  }
  v_ = std::clamp(v_, 0.0, 1.0);
}

double binary_entropy(Probability x) {
  const double v = x.value();
  if (v <= 0.0 || v >= 1.0) return 0.0;
  return -v * std::log2(v) - (1.0 - v) * std::log2(1.0 - v);
}

ErrorTriple::ErrorTriple(double eb, double ep, double aa)
    : e_b(Probability(eb)), e_p(Probability(ep)), a(Probability(aa)) {
  const double amax = std::min(e_b, e_p);
  if (a > amax + kProbabilityTol) {
    throw std::domain_error("error triple: a exceeds min(e_b, e_p)");
  }
  a = std::min(a, amax);
  if (1.0 - e_b - e_p + a < -kProbabilityTol) {
    throw std::domain_error("error triple: weight 1 - e_b - e_p + a is negative");
  }
}

double conditional_entropy(const ErrorTriple& t) {
  // -q log2(q/d) with the 0 log 0 convention applied per term. Whenever
  // q > 0 the denominator is strictly positive for a valid triple.
  const auto term = [](double q, double d) {
    return q <= 0.0 ? 0.0 : -q * std::log2(q / d);
  };
  const double l1 = 1.0 - t.e_b - t.e_p + t.a;
  return term(l1, 1.0 - t.e_b) + term(t.e_p - t.a, 1.0 - t.e_b) +
         term(t.e_b - t.a, t.e_b) + term(t.a, t.e_b);
}

double bessel_i0(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw std::domain_error("bessel_i0: argument must be nonnegative");
  }
  if (x < 15.0) {
    // sum_k (x^2/4)^k / (k!)^2; all terms positive, no cancellation
    const double q = x * x / 4.0;
    double sum = 1.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum;
  }
  // e^x/sqrt(2 pi x) * sum_k a_k / x^k with a_k = ((2k-1)!!)^2 / (k! 8^k);
  // truncated at the smallest term (the series is asymptotic)
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return std::exp(x) / std::sqrt(2.0 * std::numbers::pi * x) * sum;
}

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("binomial: require 0 <= k <= n");
  }
  if (n > 170) {
    throw std::domain_error("binomial: n > 170 overflows double");
  }
  // Pascal triangle in doubles: entries are exact until they exceed 2^53
  // (n ~ 56) and stay well under 1e-13 relative error through n = 170.
  static const std::vector<double> table = [] {
    constexpr int kMax = 170;
    std::vector<double> t((kMax + 1) * (kMax + 2) / 2);
    auto at = [&t](int nn, int kk) -> double& {
      return t[static_cast<size_t>(nn) * (nn + 1) / 2 + kk];
    };
    for (int nn = 0; nn <= kMax; ++nn) {
      at(nn, 0) = 1.0;
      at(nn, nn) = 1.0;
      for (int kk = 1; kk < nn; ++kk) {
        at(nn, kk) = at(nn - 1, kk - 1) + at(nn - 1, kk);
      }
    }
    return t;
  }();
  return table[static_cast<size_t>(n) * (n + 1) / 2 + k];
}

}  // namespace tfqkd
