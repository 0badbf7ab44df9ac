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

#include "keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tfqkd {

RateResult one_way_rate(const Observables& obs, double f) {
  if (!(f >= 1.0)) {
    throw std::invalid_argument("error correction efficiency f must be >= 1");
  }
  RateResult r;
  r.raw_rate = obs.q_z * (1.0 - f * binary_entropy(obs.e_z) - binary_entropy(obs.e_x));
  r.rate = std::max(0.0, r.raw_rate);
  r.k_bsteps = 0;
  r.observables_after = obs;
  return r;
}

Observables b_step(const Observables& obs) {
  const double ez = obs.e_z;
  const double ex = obs.e_x;
  if (ez + ex > 1.0 + kProbabilityTol) {
    throw std::domain_error("B step needs E_Z + E_X <= 1; point is not two-way-distillable");
  }
  const double a = (1.0 - ez) * (1.0 - ez) + ez * ez;  // parity-agreement probability
  const double ex_capped = std::min(ex, 1.0 - ez);
  return Observables::from_rates(0.5 * a * obs.q_z, ez * ez / a,
                                 2.0 * ex_capped * (1.0 - ez - ex_capped) / a);
}

RateResult two_way_rate(const Observables& obs, double f, int k) {
  if (k < 0) throw std::invalid_argument("number of B steps must be nonnegative");
  Observables state = obs;
  for (int i = 0; i < k; ++i) state = b_step(state);
  RateResult r = one_way_rate(state, f);
  r.k_bsteps = k;
  return r;
}

PurificationStep gl_b_step(const ErrorTriple& t) {
  const double eb = t.e_b;
  const double ep = t.e_p;
  const double a = t.a;
  const double den = (1.0 - eb) * (1.0 - eb) + eb * eb;
  const double l1 = std::max(0.0, 1.0 - eb - ep + a);
  const double eb_new = eb * eb / den;
  const double ep_new = (2.0 * l1 * (ep - a) + 2.0 * a * (eb - a)) / den;
  const double a_new = 2.0 * a * (eb - a) / den;
  return {ErrorTriple(eb_new, ep_new, a_new), den / 2.0};
}

PurificationStep gl_p_step(const ErrorTriple& t) {
  const double eb = t.e_b;
  const double ep = t.e_p;
  const double a = t.a;
  const double eb_new = 3.0 * eb * (1.0 - eb) * (1.0 - eb) + eb * eb * eb;
  const double ep_new = 3.0 * ep * ep * (1.0 - ep) + ep * ep * ep;
  const double a_new = 3.0 * a * (ep - a) * (2.0 - 2.0 * eb - ep + a) +
                       3.0 * (eb - a) * (a * a + (ep - a) * (ep - a)) + a * a * a;
  return {ErrorTriple(eb_new, ep_new, a_new), 1.0 / 3.0};
}

double lin_ideal_rate(double mu, double eta) {
  if (!(mu > 0.0)) throw std::invalid_argument("lin_ideal_rate: mu must be positive");
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("lin_ideal_rate: eta must lie in (0, 1]");
  }
  const double gain = -std::expm1(-2.0 * mu * eta);
  const double phase_error = 0.5 * (-std::expm1(-4.0 * mu + 2.0 * mu * eta));
  return gain * (1.0 - binary_entropy(phase_error));
}

double pm_qkd_error_gain(double mu, const std::map<int, double>& yields_total, int n_cut) {
  if (!(mu >= 0.0)) throw std::invalid_argument("pm_qkd_error_gain: mu must be nonnegative");
  const auto even_weight = [mu](int n) {
    // e^{-2 mu} (2 mu)^n / n! for even n, in log space
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-2.0 * mu + n * std::log(2.0 * mu) - std::lgamma(n + 1.0));
  };
  double total = 0.0;
  for (int n = 0; n <= n_cut; n += 2) {
    const auto it = yields_total.find(n);
    const double y = it == yields_total.end() ? 0.0 : Probability(it->second).value();
    total += even_weight(n) * y;
  }
  // yields above the cutoff are unknown: take Y = 1 and sum to convergence
  int n = n_cut % 2 == 0 ? n_cut + 2 : n_cut + 1;
  const int n_stop = static_cast<int>(2.0 * mu + 20.0 * std::sqrt(2.0 * mu) + 60.0);
  for (; n <= n_stop; n += 2) total += even_weight(n);
  return total;
}

double plob_bound(double eta_total) {
  if (!(eta_total >= 0.0) || eta_total >= 1.0) {
    throw std::domain_error("plob_bound: eta_total must lie in [0, 1)");
  }
  return -std::log1p(-eta_total) / std::numbers::ln2;
}

}  // namespace tfqkd
