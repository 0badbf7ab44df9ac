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

#ifndef TFQKD_DECOY_HPP
#define TFQKD_DECOY_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "channel.hpp"

namespace tfqkd {

/// Three-intensity decoy description: levels {0, omega, nu} with
/// 0 < omega < nu, plus the nine observed (or modeled) gains Q_{a,b}.
/// Gains are indexed by level, 0 = vacuum, 1 = omega, 2 = nu.
struct DecoyIntensities {
  DecoyIntensities(double omega, double nu,
                   const std::array<std::array<double, 3>, 3>& gains);

  double gain(int level_a, int level_b) const;

  double omega;
  double nu;
  std::array<std::array<double, 3>, 3> gains;
};

/// Gains filled from the lossy-channel model (simulation mode). Externally
/// measured gains go through the DecoyIntensities constructor or
/// intensities_from_kv instead; everything downstream is identical.
DecoyIntensities model_gains(const ChannelParams& ch, double omega, double nu);

/// Parses a gains table from a flat key-value document with keys
/// decoy.omega, decoy.nu and gain.<a>.<b> where <a>, <b> are one of
/// "0", "omega", "nu". Throws std::invalid_argument naming any missing key.
DecoyIntensities intensities_from_kv(const std::map<std::string, std::string>& kv);

/// Cross-correlator F_{x,y} = e^{x+y} Q_{x,y} - e^x Q_{x,0} - e^y Q_{0,y}
/// + Q_{0,0}. Its Fock expansion has no n=0 or m=0 rows, which is what makes
/// the two-photon-and-up bounds below work. x and y must be omega or nu.
double f_correlator(double x, double y, const DecoyIntensities& d);

/// Analytical upper bound on the yield Y_{n,m} from the three-intensity
/// gains. Dispatches to the bound family matching (n, m); index pairs with
/// no finite-intensity bound (0,1) and (1,0) return the trivial bound 1.
/// Every result is clamped into [0,1], so statistical noise in measured
/// gains cannot produce a negative or super-unity bound.
double yield_upper(int n, int m, const DecoyIntensities& d);

/// Upper bounds for all n, m <= n_cut, computed once.
class YieldBoundTable {
 public:
  YieldBoundTable(const DecoyIntensities& d, int n_cut);

  double operator()(int n, int m) const;
  int n_cut() const { return n_cut_; }

 private:
  int n_cut_;
  std::vector<double> bounds_;
};

/// Cauchy-Schwarz upper bound on the X-basis error gain of the
/// phase-randomized protocol:
///   (sum_{n,m} sqrt(P^a_{2n} P^b_{2m} Y_{2n,2m}))^2
/// + (sum_{n,m} sqrt(P^a_{2n+1} P^b_{2m+1} Y_{2n+1,2m+1}))^2
/// with Poisson photon-number weights P^a_n = e^{-mu_a} mu_a^n / n!.
/// Yields with both indices <= n_cut use the decoy bounds; all higher
/// indices take Y = 1, which lets the tail factorize into single Poisson
/// amplitude sums evaluated to convergence.
double phase_error_gain_upper(double mu_a, double mu_b, const DecoyIntensities& d,
                              int n_cut);

/// Same bound over a prebuilt table (the table fixes n_cut).
double phase_error_gain_upper(double mu_a, double mu_b, const YieldBoundTable& bounds);

}  // namespace tfqkd

#endif  // TFQKD_DECOY_HPP
