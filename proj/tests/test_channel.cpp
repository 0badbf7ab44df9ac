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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "channel.hpp"
#include "oracles.hpp"

using namespace tfqkd;

namespace {

// channel with composite arm efficiencies eta (symmetric), via the detector
ChannelParams flat_channel(double eta, double pd) {
  return ChannelParams(0.16, 0.0, 0.0, eta, pd);
}

OperatingPoint matched_point(const ChannelParams& ch, double x, double e_dz) {
  const auto link = link_efficiencies(ch);
  return OperatingPoint(x / link.eta_a, x / link.eta_b, e_dz);
}

}  // namespace

TEST_CASE("channel parameter validation") {
  CHECK_THROWS_AS(ChannelParams(0.0, 0, 0, 0.85, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams(0.16, -1, 0, 0.85, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams(0.16, 0, 0, 0.0, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams(0.16, 0, 0, 1.2, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams(0.16, 0, 0, 0.85, -0.1), std::invalid_argument);
}

TEST_CASE("link efficiencies") {
  const auto zero = link_efficiencies(ChannelParams(0.16, 0, 0, 1.0, 0.0));
  CHECK(zero.eta_a == 1.0);
  CHECK(zero.eta_b == 1.0);

  // 0.85 * 10^{-0.16*100/10}, frozen from a high-precision power evaluation
  const auto hundred = link_efficiencies(ChannelParams(0.16, 100, 0, 0.85, 0.0));
  CHECK(hundred.eta_a == doctest::Approx(0.021351034667831431).epsilon(1e-12));
  CHECK(hundred.eta_b == 0.85);

  const auto sym = link_efficiencies(ChannelParams(0.16, 50, 50, 0.85, 0.0));
  CHECK(sym.eta_a == sym.eta_b);
}

TEST_CASE("protocol1 observables at the ideal reference point") {
  // p_d = 0, x = 0.1, no misalignment: Q_Z = 1 - e^{-0.2}
  const ChannelParams ch = flat_channel(1.0, 0.0);
  const Observables o = protocol1_observables(ch, OperatingPoint(0.1, 0.1, 0.0));
  CHECK(o.q_z == doctest::Approx(0.18126924692201814).epsilon(1e-12));
  CHECK(o.e_z == 0.0);
  CHECK(o.q_z_error == 0.0);
  CHECK(o.q_z_correct == doctest::Approx(o.q_z).epsilon(1e-15));
  CHECK_FALSE(o.degenerate);
}

TEST_CASE("protocol1 vacuum input is degenerate without dark counts") {
  const ChannelParams ch = flat_channel(1.0, 0.0);
  const Observables o = protocol1_observables(ch, OperatingPoint(0.0, 0.0, 0.0));
  CHECK(o.q_z == 0.0);
  CHECK(o.e_z == 0.0);
  CHECK(o.e_x == 0.0);
  CHECK(o.degenerate);
}

TEST_CASE("protocol1 symmetric X-basis error reference value") {
  // mu = 0.2, eta = 0.1, p_d = 0:
  // E_X = (1/2){1 + e^{-0.8} (1 - e^{0.04}) / (1 - e^{-0.04})}
  const ChannelParams ch = flat_channel(0.1, 0.0);
  const Observables o = protocol1_observables(ch, OperatingPoint(0.2, 0.2, 0.0));
  CHECK(o.e_x == doctest::Approx(0.26616678649504538).epsilon(1e-12));
}

TEST_CASE("protocol1 enforces interference matching") {
  const ChannelParams ch = ChannelParams(0.16, 100, 0, 0.85, 1e-7);
  CHECK_THROWS_AS(protocol1_observables(ch, OperatingPoint(0.1, 0.1, 0.0)),
                  constraint_error);
  const auto link = link_efficiencies(ch);
  CHECK_NOTHROW(
      protocol1_observables(ch, OperatingPoint(0.1, 0.1 * link.eta_a / link.eta_b, 0.0)));
}

TEST_CASE("protocol1 component formulas match the closed forms") {
  // the dual-route consistency check on random valid operating points
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double eta_d = 0.5 + 0.5 * uni(rng);
    const double lac = 300.0 * uni(rng);
    const double lbc = 300.0 * uni(rng);
    const double pd = std::pow(10.0, -8.0 + 3.0 * uni(rng));
    const double e_dz = 0.1 * uni(rng);
    const double x = std::pow(10.0, -4.0 + 4.0 * uni(rng));
    const ChannelParams ch(0.16, lac, lbc, eta_d, pd);
    const Observables o = protocol1_observables(ch, matched_point(ch, x, e_dz));
    const auto cf = oracles::closed_form_observables(ch, x / ch.efficiency_a(),
                                                     x / ch.efficiency_b(), e_dz);
    CHECK(o.q_z == doctest::Approx(cf.q_z).epsilon(1e-12));
    CHECK(o.e_z == doctest::Approx(cf.e_z).epsilon(1e-12));
    CHECK(o.e_x == doctest::Approx(cf.e_x).epsilon(1e-12));
    // internal consistency of the components
    CHECK(o.q_z == doctest::Approx(o.q_z_correct + o.q_z_error).epsilon(1e-14));
    CHECK(o.q_x_correct + o.q_x_error == doctest::Approx(o.q_z).epsilon(1e-12));
    CHECK(o.e_x == doctest::Approx(o.q_x_error / o.q_z).epsilon(1e-14));
  }
}

TEST_CASE("protocol1 gain is monotone in the arriving intensity") {
  const ChannelParams ch = flat_channel(0.85, 1e-7);
  double prev = -1.0;
  for (double x = 1e-4; x <= 1.0; x *= 1.5) {
    const Observables o = protocol1_observables(ch, matched_point(ch, x, 0.0));
    CHECK(o.q_z > prev);
    prev = o.q_z;
  }
}

TEST_CASE("protocol1 X error stays within its dark-count-free envelope") {
  const ChannelParams ch = flat_channel(0.3, 0.0);
  for (double x = 1e-4; x <= 1.0; x *= 2.0) {
    const Observables o = protocol1_observables(ch, matched_point(ch, x, 0.0));
    const double mu_sum = 2.0 * x / 0.3;
    CHECK(o.e_x >= 0.0);
    CHECK(o.e_x <= 1.0);
    CHECK(o.e_x <= 0.5 * (1.0 + std::exp(-2.0 * mu_sum)) * (1.0 + 1e-9));
  }
}

TEST_CASE("decoy gain reference points") {
  CHECK(decoy_gain(0.0, 0.0, flat_channel(0.85, 0.0)) == 0.0);
  const double pd = 1e-7;
  CHECK(decoy_gain(0.0, 0.0, flat_channel(0.85, pd)) ==
        doctest::Approx(2.0 * pd * (1.0 - pd)).epsilon(1e-12));
}

TEST_CASE("decoy gain equals its photon-number expansion") {
  // symmetric composite efficiency 0.02, p_d = 1e-7
  const double dist = -10.0 * std::log10(0.02 / 0.85) / 0.16;
  const ChannelParams ch(0.16, dist, dist, 0.85, 1e-7);
  const YieldTable yields(ch, 40);
  const double q = decoy_gain(0.1, 0.1, ch);
  double fock = 0.0;
  for (int n = 0; n <= 40; ++n) {
    for (int m = 0; m <= 40; ++m) {
      fock += oracles::poisson_pmf(0.1, n) * oracles::poisson_pmf(0.1, m) * yields(n, m);
    }
  }
  CHECK(q == doctest::Approx(fock).epsilon(1e-10));
}

TEST_CASE("exact yield reference points") {
  const double pd = 1e-7;
  CHECK(yield_exact(0, 0, flat_channel(0.85, pd)) ==
        doctest::Approx(2.0 * pd * (1.0 - pd)).epsilon(1e-12));
  // single photon, perfect detectors: clicks exactly when it survives
  const ChannelParams ch(0.16, 100, 100, 1.0, 0.0);
  CHECK(yield_exact(1, 0, ch) ==
        doctest::Approx(ch.arm_transmittance_a()).epsilon(1e-12));
  CHECK(yield_exact(0, 1, ch) ==
        doctest::Approx(ch.arm_transmittance_b()).epsilon(1e-12));
}

TEST_CASE("exact yields are probabilities and symmetric on symmetric channels") {
  const ChannelParams ch(0.16, 80, 80, 0.85, 1e-7);
  for (int n = 0; n <= 6; ++n) {
    for (int m = 0; m <= 6; ++m) {
      const double y = yield_exact(n, m, ch);
      CHECK(y >= 0.0);
      CHECK(y <= 1.0);
      CHECK(y == doctest::Approx(yield_exact(m, n, ch)).epsilon(1e-12));
    }
  }
}

TEST_CASE("interference weights form a distribution") {
  for (int k = 0; k <= 10; ++k) {
    for (int l = 0; l <= 10; ++l) {
      double sum = 0.0;
      for (int u = 0; u <= k + l; ++u) sum += detail::interference_weight(k, l, u);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("yield table agrees with the one-off evaluation") {
  const ChannelParams ch(0.16, 120, 60, 0.85, 1e-7);
  const YieldTable table(ch, 12);
  for (int n = 0; n <= 12; n += 3) {
    for (int m = 0; m <= 12; m += 4) {
      CHECK(table(n, m) == doctest::Approx(yield_exact(n, m, ch)).epsilon(1e-14));
    }
  }
}

TEST_CASE("yield order guard") {
  const ChannelParams ch = flat_channel(0.85, 1e-7);
  CHECK_THROWS_AS(yield_exact(kMaxYieldOrder + 1, 0, ch), std::domain_error);
  CHECK_THROWS_AS(yield_exact(0, -1, ch), std::domain_error);
}

TEST_CASE("monte carlo oracle confirms the interfering yield") {
  // two photons on each side through lossy arms and real detectors
  const ChannelParams ch(0.16, 62.5, 62.5, 0.85, 1e-7);  // eta_t = 0.1 per arm
  const double exact = yield_exact(2, 2, ch);
  const int samples = 1000000;
  const auto mc = oracles::mc_yield(2, 2, ch, samples, 0x5eed0001);
  const double se = std::max(mc.std_error, 1.0 / samples);
  CHECK(std::abs(mc.value - exact) <= 3.0 * se);
}
