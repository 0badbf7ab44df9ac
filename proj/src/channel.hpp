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

#ifndef TFQKD_CHANNEL_HPP
#define TFQKD_CHANNEL_HPP

#include <stdexcept>
#include <vector>

namespace tfqkd {

/// Thrown when an operating point violates a protocol constraint (as opposed
/// to a plain numeric domain error).
struct constraint_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Highest photon number accepted by the exact-yield machinery.
inline constexpr int kMaxYieldOrder = 64;

/// Fiber + detector description of the untrusted-middle-node link.
/// Arm transmittances are 10^(-beta L / 10); composite arm efficiencies fold
/// in the detector efficiency.
struct ChannelParams {
  ChannelParams(double beta_db_per_km, double dist_ac_km, double dist_bc_km,
                double detector_efficiency, double dark_count_prob);

  double arm_transmittance_a() const;  // fiber only, Alice -> Charlie
  double arm_transmittance_b() const;
  double efficiency_a() const;         // detector efficiency included
  double efficiency_b() const;

  double beta_db_per_km;
  double dist_ac_km;
  double dist_bc_km;
  double detector_efficiency;
  double dark_count_prob;
};

struct LinkEfficiencies {
  double eta_a;
  double eta_b;
};

LinkEfficiencies link_efficiencies(const ChannelParams& ch);

/// Signal intensities and Z-basis misalignment for one operating point.
/// The cat-state protocol additionally requires the interference-matching
/// constraint mu_a * eta_a = mu_b * eta_b, enforced where it is consumed.
struct OperatingPoint {
  OperatingPoint(double mu_a, double mu_b, double e_dz);

  double mu_a;
  double mu_b;
  double e_dz;
};

/// Gains and error rates of one protocol at one operating point.
/// Invariants: q_z = q_z_correct + q_z_error, e_x = q_x_error / q_z and
/// q_x_correct + q_x_error = q_z (asymptotic basis-gain equality).
/// A degenerate point (q_z below 1e-300, possible only without dark counts)
/// reports zero error rates and sets the flag instead of dividing.
struct Observables {
  double q_z = 0.0;
  double e_z = 0.0;
  double e_x = 0.0;
  double q_z_correct = 0.0;
  double q_z_error = 0.0;
  double q_x_correct = 0.0;
  double q_x_error = 0.0;
  bool degenerate = false;

  /// Builds a consistent set of observables from the three composites,
  /// synthesizing the component gains. Used for post-purification states.
  static Observables from_rates(double q_z, double e_z, double e_x);
};

/// Eavesdropper-free observables of the cat-state protocol: component gains
/// of both bases plus composite Q_Z, E_Z, E_X. Requires interference
/// matching within 1e-9 relative.
Observables protocol1_observables(const ChannelParams& ch, const OperatingPoint& op);

/// Heralding gain for phase-randomized coherent pulses of intensities
/// nu_a, nu_b: 2(1-p_d) e^{-(nu_a eta_a + nu_b eta_b)/2} I0(sqrt(nu_a eta_a nu_b eta_b))
/// - 2(1-p_d)^2 e^{-(nu_a eta_a + nu_b eta_b)}.
double decoy_gain(double nu_a, double nu_b, const ChannelParams& ch);

/// Exact photon-number yield Y_{n,m}: probability that exactly one threshold
/// detector clicks when Alice sends n photons and Bob m, with binomial arm
/// losses and beam-splitter interference resolved at amplitude level.
double yield_exact(int n, int m, const ChannelParams& ch);

/// Precomputed yields for all n, m up to max_order. Construction does all
/// the work; evaluation afterwards is a cheap double sum, and the table is
/// immutable so concurrent reads are safe.
class YieldTable {
 public:
  YieldTable(const ChannelParams& ch, int max_order);

  double operator()(int n, int m) const;
  int max_order() const { return max_order_; }

 private:
  int max_order_;
  double eta_at_;
  double eta_bt_;
  std::vector<double> click_sum_;  // indexed (k, l): one-click probability after interference
};

namespace detail {

// Probability that u of the k+l interfered photons exit toward detector L.
double interference_weight(int k, int l, int u);

// Sum over output splits of P(exactly one detector clicks) given (k, l)
// photons survive the two arms.
double one_click_probability(int k, int l, double eta_d, double p_d);

}  // namespace detail

}  // namespace tfqkd

#endif  // TFQKD_CHANNEL_HPP
