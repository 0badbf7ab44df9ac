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

#ifndef TFQKD_OPTIMIZE_HPP
#define TFQKD_OPTIMIZE_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "decoy.hpp"
#include "keyrate.hpp"

namespace tfqkd {

enum class Coding {
  kCatState,         // coherent-state Z basis, cat-state X basis (exact E_X)
  kPhaseRandomized,  // three-intensity decoy X basis (bounded E_X)
};

/// Search controls for the per-distance intensity optimization. The search
/// variable is the arriving intensity x = mu_a * eta_a; the interference
/// constraint then fixes both senders' intensities.
struct OptimizeOptions {
  double x_min = 1e-5;
  double x_max = 1.0;
  int grid_points = 60;   // log-spaced coarse grid
  double x_tol = 1e-7;    // absolute tolerance of the golden-section refinement
  double decoy_omega = 0.02;
  double decoy_nu = 0.1;
  int n_cut = 10;
  // Non-owning; replaces the modeled decoy gains when set (measured data).
  const DecoyIntensities* external_gains = nullptr;
};

struct IntensityOptimum {
  double mu_a = 0.0;  // Alice's Z-basis signal intensity
  double rate = 0.0;  // bits per pulse, clamped at zero
  double x = 0.0;     // arriving intensity mu_a * eta_a at the optimum
};

/// Maximizes the k-step rate of the given coding over the arriving
/// intensity. Deterministic; returns rate 0 at the search minimum when no
/// positive rate exists anywhere on the interval.
IntensityOptimum optimize_intensity(const ChannelParams& ch, Coding coding, double e_dz,
                                    double f, int k, const OptimizeOptions& opts = {});

/// Phase-randomized-protocol observables at one operating point: Z-basis
/// gain and QBER from the coherent-state model, X-basis error replaced by
/// the decoy upper bound. e_x in the observables is capped at 1/2 (an error
/// bound past 1/2 certifies nothing, and h() would otherwise reward it);
/// e_x_upper keeps the raw bound.
struct Protocol2Point {
  Observables observables;
  double e_x_upper = 0.0;
};

Protocol2Point protocol2_point(const ChannelParams& ch, const OperatingPoint& op,
                               const YieldBoundTable& bounds);

enum class SweepProtocol {
  kCatOneWay,
  kCatK1,
  kCatK2,
  kPhaseRandomized,
  kPlob,
};

const char* sweep_protocol_name(SweepProtocol p);
std::optional<SweepProtocol> sweep_protocol_from_name(const std::string& name);

/// Full description of a rate-vs-distance sweep. Distances are total
/// Alice-Bob distances; asymmetry_ratio = L_AC / (L_AC + L_BC), 0.5 for the
/// symmetric channel.
struct SweepSpec {
  std::vector<double> distances_km;
  double asymmetry_ratio = 0.5;
  std::vector<SweepProtocol> protocols = {
      SweepProtocol::kCatOneWay, SweepProtocol::kCatK1, SweepProtocol::kCatK2,
      SweepProtocol::kPhaseRandomized, SweepProtocol::kPlob};
  double beta_db_per_km = 0.16;
  double detector_efficiency = 0.85;
  double dark_count_prob = 1e-7;
  double e_dz = 0.03;
  double error_correction_f = 1.16;
  double rep_rate_hz = 1e9;
  bool rates_per_second = false;       // scale all rate columns by rep_rate_hz
  bool bound_with_detector = false;    // fold detector efficiency into the bound
  std::optional<DecoyIntensities> external_gains;  // overrides model gains
  OptimizeOptions search;

  bool has(SweepProtocol p) const;
  void validate() const;  // throws std::invalid_argument naming the field
};

/// One row of a sweep. Columns for protocols not in the spec are NaN; the
/// repeaterless bound is +infinity at zero total loss. A failure while
/// evaluating a row is recorded in `error` and never aborts the sweep.
struct CurvePoint {
  double distance_km = 0.0;
  double total_loss_db = 0.0;
  double rate_p1_oneway = std::numeric_limits<double>::quiet_NaN();
  double rate_p1_k1 = std::numeric_limits<double>::quiet_NaN();
  double rate_p1_k2 = std::numeric_limits<double>::quiet_NaN();
  double rate_p2 = std::numeric_limits<double>::quiet_NaN();
  double plob = std::numeric_limits<double>::quiet_NaN();
  double mu_opt_p1 = std::numeric_limits<double>::quiet_NaN();
  double mu_opt_p2 = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

/// Runs the sweep row by row. Rows are pure functions of the spec, so the
/// output is bit-identical across runs.
std::vector<CurvePoint> run_sweep(const SweepSpec& spec);

/// Everything the single-point report needs, computed with the same
/// machinery as a one-row sweep. NaN marks protocols not in the spec.
struct PointReport {
  double distance_km = 0.0;
  double total_loss_db = 0.0;
  double p1_mu_opt = std::numeric_limits<double>::quiet_NaN();
  double p1_q_z = std::numeric_limits<double>::quiet_NaN();
  double p1_e_z = std::numeric_limits<double>::quiet_NaN();
  double p1_e_x = std::numeric_limits<double>::quiet_NaN();
  double p1_rate_oneway = std::numeric_limits<double>::quiet_NaN();
  double p1_rate_k1 = std::numeric_limits<double>::quiet_NaN();
  double p1_rate_k2 = std::numeric_limits<double>::quiet_NaN();
  double p2_mu_opt = std::numeric_limits<double>::quiet_NaN();
  double p2_q_z = std::numeric_limits<double>::quiet_NaN();
  double p2_e_z = std::numeric_limits<double>::quiet_NaN();
  double p2_e_x_upper = std::numeric_limits<double>::quiet_NaN();
  double p2_rate = std::numeric_limits<double>::quiet_NaN();
  double plob = std::numeric_limits<double>::quiet_NaN();
};

PointReport compute_point_report(const SweepSpec& spec);

}  // namespace tfqkd

#endif  // TFQKD_OPTIMIZE_HPP
