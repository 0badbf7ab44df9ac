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

#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace tfqkd {

namespace {

struct RateContext {
  const ChannelParams& ch;
  LinkEfficiencies link;
  Coding coding;
  double e_dz;
  double f;
  int k;
  const YieldBoundTable* bounds;  // only for phase-randomized coding
};

// k-step rate at arriving intensity x; 0 where the point yields no key
double rate_at(const RateContext& ctx, double x) {
  const OperatingPoint op(x / ctx.link.eta_a, x / ctx.link.eta_b, ctx.e_dz);
  try {
    Observables obs;
    if (ctx.coding == Coding::kCatState) {
      obs = protocol1_observables(ctx.ch, op);
    } else {
      obs = protocol2_point(ctx.ch, op, *ctx.bounds).observables;
    }
    if (obs.degenerate) return 0.0;
    return two_way_rate(obs, ctx.f, ctx.k).rate;
  } catch (const std::domain_error&) {
    return 0.0;  // point outside the distillable region
  }
}

}  // namespace

Protocol2Point protocol2_point(const ChannelParams& ch, const OperatingPoint& op,
                               const YieldBoundTable& bounds) {
  const Observables z = protocol1_observables(ch, op);
  Protocol2Point p;
  if (z.degenerate) {
    p.observables = z;
    p.e_x_upper = 0.0;
    return p;
  }
  p.e_x_upper = phase_error_gain_upper(op.mu_a, op.mu_b, bounds) / z.q_z;
  p.observables = Observables::from_rates(z.q_z, z.e_z, std::min(p.e_x_upper, 0.5));
  p.observables.q_z_correct = z.q_z_correct;
  p.observables.q_z_error = z.q_z_error;
  return p;
}

IntensityOptimum optimize_intensity(const ChannelParams& ch, Coding coding, double e_dz,
                                    double f, int k, const OptimizeOptions& opts) {
  if (!(opts.x_min > 0.0) || !(opts.x_max > opts.x_min)) {
    throw std::invalid_argument("intensity search interval must satisfy 0 < x_min < x_max");
  }
  if (opts.grid_points < 4) {
    throw std::invalid_argument("intensity search needs at least 4 grid points");
  }
  const LinkEfficiencies link = link_efficiencies(ch);

  std::optional<YieldBoundTable> bounds;
  if (coding == Coding::kPhaseRandomized) {
    if (opts.external_gains != nullptr) {
      bounds.emplace(*opts.external_gains, opts.n_cut);
    } else {
      bounds.emplace(model_gains(ch, opts.decoy_omega, opts.decoy_nu), opts.n_cut);
    }
  }
  const RateContext ctx{ch, link, coding, e_dz, f, k,
                        bounds ? &*bounds : nullptr};

  // log-spaced coarse grid
  const double ratio = opts.x_max / opts.x_min;
  std::vector<double> xs(opts.grid_points);
  std::vector<double> rates(opts.grid_points);
  int best = 0;
  for (int i = 0; i < opts.grid_points; ++i) {
    xs[i] = opts.x_min * std::pow(ratio, static_cast<double>(i) / (opts.grid_points - 1));
    rates[i] = rate_at(ctx, xs[i]);
    if (rates[i] > rates[best]) best = i;
  }
  if (rates[best] <= 0.0) {
    return {opts.x_min / link.eta_a, 0.0, opts.x_min};
  }

  // golden-section refinement on the bracketing grid cells
  constexpr double kInvPhi = 0.6180339887498949;
  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(opts.grid_points - 1, best + 1)];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = rate_at(ctx, c);
  double fd = rate_at(ctx, d);
  while (b - a > opts.x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = rate_at(ctx, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = rate_at(ctx, d);
    }
  }
  const double x_opt = fc > fd ? c : d;
  const double r_opt = std::max(fc, fd);
  if (r_opt <= rates[best]) {
    return {xs[best] / link.eta_a, rates[best], xs[best]};
  }
  return {x_opt / link.eta_a, r_opt, x_opt};
}

const char* sweep_protocol_name(SweepProtocol p) {
  switch (p) {
    case SweepProtocol::kCatOneWay: return "cat-state-oneway";
    case SweepProtocol::kCatK1: return "cat-state-k1";
    case SweepProtocol::kCatK2: return "cat-state-k2";
    case SweepProtocol::kPhaseRandomized: return "phase-randomized";
    case SweepProtocol::kPlob: return "plob";
  }
  return "?";
}

std::optional<SweepProtocol> sweep_protocol_from_name(const std::string& name) {
  for (SweepProtocol p : {SweepProtocol::kCatOneWay, SweepProtocol::kCatK1,
                          SweepProtocol::kCatK2, SweepProtocol::kPhaseRandomized,
                          SweepProtocol::kPlob}) {
    if (name == sweep_protocol_name(p)) return p;
  }
  return std::nullopt;
}

bool SweepSpec::has(SweepProtocol p) const {
  return std::find(protocols.begin(), protocols.end(), p) != protocols.end();
}

void SweepSpec::validate() const {
  for (size_t i = 0; i < distances_km.size(); ++i) {
    if (!(distances_km[i] >= 0.0)) {
      throw std::invalid_argument("distances_km must be nonnegative");
    }
    if (i > 0 && !(distances_km[i] > distances_km[i - 1])) {
      throw std::invalid_argument("distances_km must be strictly increasing");
    }
  }
  if (!(asymmetry_ratio > 0.0 && asymmetry_ratio < 1.0)) {
    throw std::invalid_argument("asymmetry_ratio must lie in (0, 1)");
  }
  if (protocols.empty()) throw std::invalid_argument("protocols must be nonempty");
  if (!(error_correction_f >= 1.0)) {
    throw std::invalid_argument("error_correction_f must be >= 1");
  }
  if (!(e_dz >= 0.0 && e_dz <= 0.5)) throw std::invalid_argument("e_dz must lie in [0, 0.5]");
  if (!(rep_rate_hz > 0.0)) throw std::invalid_argument("rep_rate_hz must be positive");
  if (!(search.decoy_omega > 0.0 && search.decoy_nu > search.decoy_omega)) {
    throw std::invalid_argument("decoy intensities require 0 < omega < nu");
  }
  if (search.n_cut < 2) throw std::invalid_argument("n_cut must be >= 2");
  // constructing a throwaway channel validates the remaining fields
  ChannelParams(beta_db_per_km, 0.0, 0.0, detector_efficiency, dark_count_prob);
}

namespace {

ChannelParams channel_at(const SweepSpec& spec, double distance_km) {
  return ChannelParams(spec.beta_db_per_km, spec.asymmetry_ratio * distance_km,
                       (1.0 - spec.asymmetry_ratio) * distance_km,
                       spec.detector_efficiency, spec.dark_count_prob);
}

double plob_at(const SweepSpec& spec, double distance_km) {
  double eta = std::pow(10.0, -spec.beta_db_per_km * distance_km / 10.0);
  if (spec.bound_with_detector) eta *= spec.detector_efficiency;
  if (eta >= 1.0) return std::numeric_limits<double>::infinity();
  return plob_bound(eta);
}

struct CatOptima {
  IntensityOptimum by_k[3];
  bool computed[3] = {false, false, false};
};

void fill_row(const SweepSpec& spec, double distance_km, CurvePoint& row) {
  const ChannelParams ch = channel_at(spec, distance_km);
  const double scale = spec.rates_per_second ? spec.rep_rate_hz : 1.0;

  CatOptima cat;
  const auto cat_rate = [&](int k) -> double {
    if (!cat.computed[k]) {
      cat.by_k[k] = optimize_intensity(ch, Coding::kCatState, spec.e_dz,
                                       spec.error_correction_f, k, spec.search);
      cat.computed[k] = true;
    }
    return cat.by_k[k].rate * scale;
  };

  if (spec.has(SweepProtocol::kCatOneWay)) row.rate_p1_oneway = cat_rate(0);
  if (spec.has(SweepProtocol::kCatK1)) row.rate_p1_k1 = cat_rate(1);
  if (spec.has(SweepProtocol::kCatK2)) row.rate_p1_k2 = cat_rate(2);
  // the reported cat-state intensity is the lowest-k selected variant's optimum
  for (int k = 0; k < 3; ++k) {
    if (cat.computed[k]) {
      row.mu_opt_p1 = cat.by_k[k].mu_a;
      break;
    }
  }

  if (spec.has(SweepProtocol::kPhaseRandomized)) {
    OptimizeOptions o = spec.search;
    if (spec.external_gains) o.external_gains = &*spec.external_gains;
    const IntensityOptimum p2 = optimize_intensity(
        ch, Coding::kPhaseRandomized, spec.e_dz, spec.error_correction_f, 0, o);
    row.rate_p2 = p2.rate * scale;
    row.mu_opt_p2 = p2.mu_a;
  }

  if (spec.has(SweepProtocol::kPlob)) {
    row.plob = plob_at(spec, distance_km) * scale;
  }
}

}  // namespace

std::vector<CurvePoint> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<CurvePoint> rows;
  rows.reserve(spec.distances_km.size());
  for (const double d : spec.distances_km) {
    CurvePoint row;
    row.distance_km = d;
    row.total_loss_db = spec.beta_db_per_km * d;
    try {
      fill_row(spec, d, row);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PointReport compute_point_report(const SweepSpec& spec) {
  spec.validate();
  if (spec.distances_km.size() != 1) {
    throw std::invalid_argument("point report needs exactly one distance");
  }
  const double d = spec.distances_km.front();
  const ChannelParams ch = channel_at(spec, d);
  const double scale = spec.rates_per_second ? spec.rep_rate_hz : 1.0;

  PointReport rep;
  rep.distance_km = d;
  rep.total_loss_db = spec.beta_db_per_km * d;

  const bool any_cat = spec.has(SweepProtocol::kCatOneWay) ||
                       spec.has(SweepProtocol::kCatK1) || spec.has(SweepProtocol::kCatK2);
  if (any_cat) {
    const IntensityOptimum opt = optimize_intensity(
        ch, Coding::kCatState, spec.e_dz, spec.error_correction_f, 0, spec.search);
    rep.p1_mu_opt = opt.mu_a;
    const LinkEfficiencies link = link_efficiencies(ch);
    const Observables obs = protocol1_observables(
        ch, OperatingPoint(opt.mu_a, opt.x / link.eta_b, spec.e_dz));
    rep.p1_q_z = obs.q_z;
    rep.p1_e_z = obs.e_z;
    rep.p1_e_x = obs.e_x;
    if (spec.has(SweepProtocol::kCatOneWay)) rep.p1_rate_oneway = opt.rate * scale;
    if (spec.has(SweepProtocol::kCatK1)) {
      rep.p1_rate_k1 = optimize_intensity(ch, Coding::kCatState, spec.e_dz,
                                          spec.error_correction_f, 1, spec.search)
                           .rate * scale;
    }
    if (spec.has(SweepProtocol::kCatK2)) {
      rep.p1_rate_k2 = optimize_intensity(ch, Coding::kCatState, spec.e_dz,
                                          spec.error_correction_f, 2, spec.search)
                           .rate * scale;
    }
  }

  if (spec.has(SweepProtocol::kPhaseRandomized)) {
    OptimizeOptions o = spec.search;
    if (spec.external_gains) o.external_gains = &*spec.external_gains;
    const IntensityOptimum opt = optimize_intensity(
        ch, Coding::kPhaseRandomized, spec.e_dz, spec.error_correction_f, 0, o);
    rep.p2_mu_opt = opt.mu_a;
    rep.p2_rate = opt.rate * scale;
    const DecoyIntensities gains =
        spec.external_gains ? *spec.external_gains
                            : model_gains(ch, spec.search.decoy_omega, spec.search.decoy_nu);
    const YieldBoundTable bounds(gains, spec.search.n_cut);
    const LinkEfficiencies link = link_efficiencies(ch);
    const Protocol2Point p2 = protocol2_point(
        ch, OperatingPoint(opt.mu_a, opt.x / link.eta_b, spec.e_dz), bounds);
    rep.p2_q_z = p2.observables.q_z;
    rep.p2_e_z = p2.observables.e_z;
    rep.p2_e_x_upper = p2.e_x_upper;
  }

  if (spec.has(SweepProtocol::kPlob)) rep.plob = plob_at(spec, d) * scale;
  return rep;
}

}  // namespace tfqkd
