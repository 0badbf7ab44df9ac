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

#include "channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "numerics.hpp"

namespace tfqkd {

namespace {

constexpr double kDegenerateGain = 1e-300;

double checked_probability(double v, const char* name) {
  if (std::isnan(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
  return v;
}

}  // namespace

ChannelParams::ChannelParams(double beta, double lac, double lbc, double etad, double pd)
    : beta_db_per_km(beta),
      dist_ac_km(lac),
      dist_bc_km(lbc),
      detector_efficiency(etad),
      dark_count_prob(pd) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta_db_per_km must be positive");
  if (!(lac >= 0.0)) throw std::invalid_argument("dist_ac_km must be nonnegative");
  if (!(lbc >= 0.0)) throw std::invalid_argument("dist_bc_km must be nonnegative");
  checked_probability(etad, "detector_efficiency");
  if (etad <= 0.0) throw std::invalid_argument("detector_efficiency must be positive");
  checked_probability(pd, "dark_count_prob");
  if (!(efficiency_a() > 0.0) || !(efficiency_b() > 0.0)) {
    throw std::invalid_argument("composite arm efficiency underflows to zero");
  }
}

double ChannelParams::arm_transmittance_a() const {
  return std::pow(10.0, -beta_db_per_km * dist_ac_km / 10.0);
}

double ChannelParams::arm_transmittance_b() const {
  return std::pow(10.0, -beta_db_per_km * dist_bc_km / 10.0);
}

double ChannelParams::efficiency_a() const {
  return detector_efficiency * arm_transmittance_a();
}

double ChannelParams::efficiency_b() const {
  return detector_efficiency * arm_transmittance_b();
}

LinkEfficiencies link_efficiencies(const ChannelParams& ch) {
  return {ch.efficiency_a(), ch.efficiency_b()};
}

OperatingPoint::OperatingPoint(double mua, double mub, double edz)
    : mu_a(mua), mu_b(mub), e_dz(edz) {
  if (!std::isfinite(mu_a) || !(mu_a >= 0.0)) {
    throw std::invalid_argument("mu_a must be finite and nonnegative");
  }
  if (!std::isfinite(mu_b) || !(mu_b >= 0.0)) {
    throw std::invalid_argument("mu_b must be finite and nonnegative");
  }
  if (!(e_dz >= 0.0 && e_dz <= 0.5)) {
    throw std::invalid_argument("e_dz must lie in [0, 0.5]");
  }
}

Observables Observables::from_rates(double q_z, double e_z, double e_x) {
  Observables o;
  o.q_z = Probability(q_z);
  o.e_z = Probability(e_z);
  o.e_x = Probability(e_x);
  o.q_z_correct = (1.0 - o.e_z) * o.q_z;
  o.q_z_error = o.e_z * o.q_z;
  o.q_x_error = o.e_x * o.q_z;
  o.q_x_correct = (1.0 - o.e_x) * o.q_z;
  return o;
}

Observables protocol1_observables(const ChannelParams& ch, const OperatingPoint& op) {
  const auto [eta_a, eta_b] = link_efficiencies(ch);
  const double xa = op.mu_a * eta_a;
  const double xb = op.mu_b * eta_b;
  if (std::abs(xa - xb) > 1e-9 * std::max({xa, xb, 1e-300})) {
    throw constraint_error("interference matching violated: mu_a*eta_a != mu_b*eta_b");
  }
  const double x = xa;
  if (x > 300.0) {
    throw std::domain_error("arriving intensity too large for the gain model");
  }
  const double pd = ch.dark_count_prob;
  const double cd = 1.0 - pd;
  const double big_m = op.mu_a + op.mu_b;  // total sent intensity, >= 2x

  const double exp_m2x = std::exp(-2.0 * x);
  const double exp_2xm = std::exp(2.0 * (x - big_m));
  const double exp_m2m = std::exp(-2.0 * big_m);
  const double em2x = -std::expm1(-2.0 * x);           // 1 - e^{-2x}
  const double e2x = std::expm1(2.0 * x);              // e^{2x} - 1
  const double dip = -std::expm1(2.0 * (x - big_m));   // 1 - e^{2(x-M)}

  Observables o;
  o.q_z_correct = cd * (em2x + pd * exp_m2x);
  o.q_z_error = pd * cd * exp_m2x;
  o.q_z = o.q_z_correct + o.q_z_error;
  // X-basis component gains, factored so every term is nonnegative; expanding
  // recovers (1-p_d)/2 [1 -+ e^{-2M} - (1-2p_d)(e^{-2x} -+ e^{2x-2M})]
  o.q_x_error = 0.5 * cd * (2.0 * pd * (exp_m2x + exp_2xm) + e2x * exp_m2x * dip);
  o.q_x_correct =
      0.5 * cd * (em2x + exp_m2m * e2x + 2.0 * pd * (exp_m2x - exp_2xm));

  if (o.q_z < kDegenerateGain) {
    o.q_z = 0.0;
    o.e_z = 0.0;
    o.e_x = 0.0;
    o.degenerate = true;
    return o;
  }
  o.e_z = (op.e_dz * o.q_z_correct + (1.0 - op.e_dz) * o.q_z_error) / o.q_z;
  o.e_x = o.q_x_error / o.q_z;
  return o;
}

double decoy_gain(double nu_a, double nu_b, const ChannelParams& ch) {
  if (!(nu_a >= 0.0) || !(nu_b >= 0.0)) {
    throw std::invalid_argument("decoy intensities must be nonnegative");
  }
  const auto [eta_a, eta_b] = link_efficiencies(ch);
  const double sa = nu_a * eta_a;
  const double sb = nu_b * eta_b;
  const double cd = 1.0 - ch.dark_count_prob;
  return 2.0 * cd * std::exp(-0.5 * (sa + sb)) * bessel_i0(std::sqrt(sa * sb)) -
         2.0 * cd * cd * std::exp(-(sa + sb));
}

namespace detail {

namespace {

// log(n!) with exact values in the small regime
double log_factorial(int n) {
  static const std::vector<double> small = [] {
    std::vector<double> v(21);
    double f = 1.0;
    v[0] = 0.0;
    for (int i = 1; i <= 20; ++i) {
      f *= i;
      v[i] = std::log(f);
    }
    return v;
  }();
  if (n <= 20) return small[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

double interference_weight(int k, int l, int u) {
  if (u < 0 || u > k + l) return 0.0;
  // signed sum over ways to route photons to the two output ports
  double amp = 0.0;
  for (int v = 0; v <= l; ++v) {
    if (u - v < 0 || u - v > k) continue;
    const double c = binomial(l, v) * binomial(k, u - v);
    amp += ((l - v) % 2 == 0) ? c : -c;
  }
  if (amp == 0.0) return 0.0;
  const double log_ratio = log_factorial(u) + log_factorial(k + l - u) -
                           (k + l) * std::numbers::ln2 - log_factorial(k) -
                           log_factorial(l);
  return std::exp(log_ratio) * amp * amp;
}

double one_click_probability(int k, int l, double eta_d, double p_d) {
  const double cd = 1.0 - p_d;
  const double miss = 1.0 - eta_d;
  double total = 0.0;
  for (int u = 0; u <= k + l; ++u) {
    const double w = interference_weight(k, l, u);
    if (w == 0.0) continue;
    const double no_l = cd * std::pow(miss, u);
    const double no_r = cd * std::pow(miss, k + l - u);
    total += w * ((1.0 - no_l) * no_r + no_l * (1.0 - no_r));
  }
  return total;
}

}  // namespace detail

namespace {

double yield_from_click_sums(int n, int m, double eta_at, double eta_bt,
                             const double* click, int stride) {
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double wa = binomial(n, k) * std::pow(eta_at, k) * std::pow(1.0 - eta_at, n - k);
    if (wa == 0.0) continue;
    for (int l = 0; l <= m; ++l) {
      const double wb = binomial(m, l) * std::pow(eta_bt, l) * std::pow(1.0 - eta_bt, m - l);
      if (wb == 0.0) continue;
      total += wa * wb * click[k * stride + l];
    }
  }
  return std::clamp(total, 0.0, 1.0);
}

void check_yield_order(int n, int m) {
  if (n < 0 || m < 0 || n > kMaxYieldOrder || m > kMaxYieldOrder) {
    throw std::domain_error("yield order outside [0, " +
                            std::to_string(kMaxYieldOrder) + "]");
  }
}

}  // namespace

double yield_exact(int n, int m, const ChannelParams& ch) {
  check_yield_order(n, m);
  const int stride = m + 1;
  std::vector<double> click((n + 1) * stride);
  for (int k = 0; k <= n; ++k) {
    for (int l = 0; l <= m; ++l) {
      click[k * stride + l] =
          detail::one_click_probability(k, l, ch.detector_efficiency, ch.dark_count_prob);
    }
  }
  return yield_from_click_sums(n, m, ch.arm_transmittance_a(), ch.arm_transmittance_b(),
                               click.data(), stride);
}

YieldTable::YieldTable(const ChannelParams& ch, int max_order)
    : max_order_(max_order),
      eta_at_(ch.arm_transmittance_a()),
      eta_bt_(ch.arm_transmittance_b()) {
  check_yield_order(max_order, max_order);
  const int s = max_order_ + 1;
  click_sum_.resize(static_cast<size_t>(s) * s);
  for (int k = 0; k < s; ++k) {
    for (int l = 0; l < s; ++l) {
      click_sum_[static_cast<size_t>(k) * s + l] =
          detail::one_click_probability(k, l, ch.detector_efficiency, ch.dark_count_prob);
    }
  }
}

double YieldTable::operator()(int n, int m) const {
  if (n < 0 || m < 0 || n > max_order_ || m > max_order_) {
    throw std::domain_error("yield order outside the precomputed table");
  }
  return yield_from_click_sums(n, m, eta_at_, eta_bt_, click_sum_.data(), max_order_ + 1);
}

}  // namespace tfqkd
