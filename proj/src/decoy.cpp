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

#include "decoy.hpp"

#include <algorithm>
#include <cmath>

#include "numerics.hpp"

namespace tfqkd {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sqrt(e^-mu mu^n / n!), evaluated in log space so large mu cannot overflow
double sqrt_poisson(double mu, int n) {
  if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(0.5 * (-mu + n * std::log(mu) - std::lgamma(n + 1.0)));
}

// sum of sqrt-Poisson amplitudes over indices of one parity in [0, n_max]
double sqrt_poisson_parity_sum(double mu, int parity, int n_max) {
  double s = 0.0;
  for (int n = parity; n <= n_max; n += 2) s += sqrt_poisson(mu, n);
  return s;
}

// order beyond which sqrt-Poisson amplitudes are below 1e-18 of the sum
int tail_order(double mu) {
  return static_cast<int>(mu + 20.0 * std::sqrt(mu) + 60.0);
}

}  // namespace

DecoyIntensities::DecoyIntensities(double omega_, double nu_,
                                   const std::array<std::array<double, 3>, 3>& g)
    : omega(omega_), nu(nu_), gains(g) {
  if (!(omega > 0.0) || !(nu > omega)) {
    throw std::invalid_argument("decoy intensities require 0 < omega < nu");
  }
  for (auto& row : gains) {
    for (auto& q : row) q = Probability(q);
  }
}

double DecoyIntensities::gain(int a, int b) const {
  if (a < 0 || a > 2 || b < 0 || b > 2) {
    throw std::invalid_argument("decoy gain index outside {0, omega, nu}");
  }
  return gains[a][b];
}

DecoyIntensities model_gains(const ChannelParams& ch, double omega, double nu) {
  const double levels[3] = {0.0, omega, nu};
  std::array<std::array<double, 3>, 3> g{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      g[a][b] = decoy_gain(levels[a], levels[b], ch);
    }
  }
  return DecoyIntensities(omega, nu, g);
}

DecoyIntensities intensities_from_kv(const std::map<std::string, std::string>& kv) {
  const auto get = [&kv](const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("gains table is missing key: " + key);
    }
    try {
      size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("gains table has a non-numeric value for: " + key);
    }
  };
  const char* names[3] = {"0", "omega", "nu"};
  std::array<std::array<double, 3>, 3> g{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      g[a][b] = get(std::string("gain.") + names[a] + "." + names[b]);
    }
  }
  return DecoyIntensities(get("decoy.omega"), get("decoy.nu"), g);
}

namespace {

int level_of(double x, const DecoyIntensities& d) {
  if (x == d.omega) return 1;
  if (x == d.nu) return 2;
  if (x == 0.0) return 0;
  throw std::invalid_argument("correlator intensity must be one of the decoy levels");
}

}  // namespace

double f_correlator(double x, double y, const DecoyIntensities& d) {
  const int a = level_of(x, d);
  const int b = level_of(y, d);
  return std::exp(x + y) * d.gain(a, b) - std::exp(x) * d.gain(a, 0) -
         std::exp(y) * d.gain(0, b) + d.gain(0, 0);
}

double yield_upper(int n, int m, const DecoyIntensities& d) {
  if (n < 0 || m < 0) throw std::invalid_argument("yield indices must be nonnegative");
  const double w = d.omega;
  const double v = d.nu;
  if (n == 0 && m == 0) {
    return clamp01(d.gain(0, 0));
  }
  if (n == 1 && m == 1) {
    return clamp01(f_correlator(w, w, d) / (w * w));
  }
  if ((n == 0 && m >= 2) || (m == 0 && n >= 2)) {
    const int order = std::max(n, m);
    const bool bob_side = (n == 0);
    const double q_v = bob_side ? d.gain(0, 2) : d.gain(2, 0);
    const double q_w = bob_side ? d.gain(0, 1) : d.gain(1, 0);
    const double num = w * std::exp(v) * q_v - v * std::exp(w) * q_w + (v - w) * d.gain(0, 0);
    const double den =
        v * w * (std::pow(v, order - 1) - std::pow(w, order - 1)) / factorial_d(order);
    return clamp01(num / den);
  }
  if ((n == 1 && m >= 2) || (m == 1 && n >= 2)) {
    const int order = std::max(n, m);
    const double f_cross = (n == 1) ? f_correlator(w, v, d) : f_correlator(v, w, d);
    const double num = w * f_cross - v * f_correlator(w, w, d);
    const double den = (std::pow(v, order) * w * w - v * std::pow(w, order + 1)) /
                       factorial_d(order);
    return clamp01(num / den);
  }
  if (n >= 2 && m >= 2) {
    const double num = w * w * f_correlator(v, v, d) -
                       v * w * (f_correlator(v, w, d) + f_correlator(w, v, d)) +
                       v * v * f_correlator(w, w, d);
    const double den = v * v * w * w * (std::pow(v, n - 1) - std::pow(w, n - 1)) *
                       (std::pow(v, m - 1) - std::pow(w, m - 1)) /
                       (factorial_d(n) * factorial_d(m));
    return clamp01(num / den);
  }
  // (0,1) and (1,0): no finite-intensity bound in this family
  return 1.0;
}

YieldBoundTable::YieldBoundTable(const DecoyIntensities& d, int n_cut) : n_cut_(n_cut) {
  if (n_cut_ < 2) throw std::invalid_argument("yield bound table requires n_cut >= 2");
  const int s = n_cut_ + 1;
  bounds_.resize(static_cast<size_t>(s) * s);
  for (int n = 0; n < s; ++n) {
    for (int m = 0; m < s; ++m) {
      bounds_[static_cast<size_t>(n) * s + m] = yield_upper(n, m, d);
    }
  }
}

double YieldBoundTable::operator()(int n, int m) const {
  if (n < 0 || m < 0 || n > n_cut_ || m > n_cut_) {
    throw std::invalid_argument("yield bound index outside the table");
  }
  return bounds_[static_cast<size_t>(n) * (n_cut_ + 1) + m];
}

double phase_error_gain_upper(double mu_a, double mu_b, const YieldBoundTable& bounds) {
  if (!(mu_a >= 0.0) || !(mu_b >= 0.0)) {
    throw std::invalid_argument("signal intensities must be nonnegative");
  }
  const int n_cut = bounds.n_cut();
  const int n_max = tail_order(std::max(mu_a, mu_b));
  double sums[2] = {0.0, 0.0};  // even-even and odd-odd amplitude sums
  for (int i = 0; i <= n_cut; ++i) {
    const double pa = sqrt_poisson(mu_a, i);
    for (int j = i % 2; j <= n_cut; j += 2) {
      sums[i % 2] += pa * sqrt_poisson(mu_b, j) * std::sqrt(bounds(i, j));
    }
  }
  // Y = 1 tail: full parity sums minus the part already counted above
  for (int parity = 0; parity < 2; ++parity) {
    const double full_a = sqrt_poisson_parity_sum(mu_a, parity, n_max);
    const double full_b = sqrt_poisson_parity_sum(mu_b, parity, n_max);
    const double head_a = sqrt_poisson_parity_sum(mu_a, parity, n_cut);
    const double head_b = sqrt_poisson_parity_sum(mu_b, parity, n_cut);
    sums[parity] += full_a * full_b - head_a * head_b;
  }
  return sums[0] * sums[0] + sums[1] * sums[1];
}

double phase_error_gain_upper(double mu_a, double mu_b, const DecoyIntensities& d,
                              int n_cut) {
  return phase_error_gain_upper(mu_a, mu_b, YieldBoundTable(d, n_cut));
}

}  // namespace tfqkd
