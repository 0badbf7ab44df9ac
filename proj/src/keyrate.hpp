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

#ifndef TFQKD_KEYRATE_HPP
#define TFQKD_KEYRATE_HPP

#include <map>

#include "channel.hpp"
#include "numerics.hpp"

namespace tfqkd {

/// Secret-key rate of one operating point. raw_rate keeps the unclamped
/// value (negative means no key); rate = max(0, raw_rate).
struct RateResult {
  double rate = 0.0;
  double raw_rate = 0.0;
  int k_bsteps = 0;
  Observables observables_after;
};

/// One-way rate R = Q_Z [1 - f h(E_Z) - h(E_X)] with error-correction
/// efficiency f >= 1.
RateResult one_way_rate(const Observables& obs, double f);

/// One parity-comparison (B) step on the observables:
///   Q -> A Q / 2,  E_Z -> E_Z^2 / A,  E_X -> 2 E_X (1 - E_Z - E_X) / A
/// with A = (1-E_Z)^2 + E_Z^2. Requires E_Z + E_X <= 1; a point violating
/// that is not two-way-distillable and raises a domain error.
Observables b_step(const Observables& obs);

/// Applies k B steps and then the one-way rate; k = 0 is exactly
/// one_way_rate.
RateResult two_way_rate(const Observables& obs, double f, int k);

struct PurificationStep {
  ErrorTriple state;
  double survival;
};

/// Gottesman-Lo bilateral-XOR (B) step on a Bell-diagonal triple, with
/// survival probability [(1-e_b)^2 + e_b^2] / 2.
PurificationStep gl_b_step(const ErrorTriple& t);

/// Gottesman-Lo three-group parity (P) step, survival 1/3. Suppresses the
/// phase error quadratically at the cost of a cubic bit-error map.
PurificationStep gl_p_step(const ErrorTriple& t);

/// Closed-form ideal rate of the matched-intensity coherent-state protocol
/// over a symmetric lossless-detector channel (no dark counts, no
/// misalignment, f = 1):
///   R = (1 - e^{-2 mu eta}) [1 - h((1 - e^{-4 mu + 2 mu eta}) / 2)].
/// Identical to composing protocol1_observables with one_way_rate at those
/// settings.
double lin_ideal_rate(double mu, double eta);

/// Even-photon-number error gain of the phase-matching protocol with equal
/// intensities: sum_n e^{-2 mu} (2 mu)^{2n} Y_{2n} / (2n)!. yields_total maps
/// the total photon number to its yield (missing entries count as 0); above
/// n_cut the yield is taken as 1 and the tail summed to convergence.
double pm_qkd_error_gain(double mu, const std::map<int, double>& yields_total, int n_cut);

/// Repeaterless secret-key capacity -log2(1 - eta_total) of a pure-loss
/// channel of end-to-end transmittance eta_total in [0, 1).
double plob_bound(double eta_total);

}  // namespace tfqkd

#endif  // TFQKD_KEYRATE_HPP
