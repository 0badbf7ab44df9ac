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
#include <cstring>

#include "optimize.hpp"

using namespace tfqkd;

namespace {

ChannelParams paper_channel(double total_km, double ratio = 0.5) {
  return ChannelParams(0.16, ratio * total_km, (1.0 - ratio) * total_km, 0.85, 1e-7);
}

double cat_rate_at(const ChannelParams& ch, double x, double e_dz, double f, int k) {
  const auto link = link_efficiencies(ch);
  const Observables obs =
      protocol1_observables(ch, OperatingPoint(x / link.eta_a, x / link.eta_b, e_dz));
  return two_way_rate(obs, f, k).rate;
}

}  // namespace

TEST_CASE("optimum exists in the interior at zero distance") {
  const ChannelParams ch(0.16, 0, 0, 0.85, 0.0);
  const auto opt = optimize_intensity(ch, Coding::kCatState, 0.0, 1.16, 0);
  CHECK(opt.rate > 0.0);
  CHECK(opt.x > 1e-5);
  CHECK(opt.x < 1.0);
}

TEST_CASE("optimizer matches a dense grid search") {
  const ChannelParams ch = paper_channel(100);
  const auto opt = optimize_intensity(ch, Coding::kCatState, 0.03, 1.16, 0);
  double dense = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = 1e-5 * std::pow(1e5, i / 9999.0);
    dense = std::max(dense, cat_rate_at(ch, x, 0.03, 1.16, 0));
  }
  CHECK(opt.rate == doctest::Approx(dense).epsilon(1e-6));
  CHECK(opt.rate >= dense * (1.0 - 1e-9));
}

TEST_CASE("phase-randomized optimizer matches its dense grid") {
  const ChannelParams ch = paper_channel(100);
  const auto opt = optimize_intensity(ch, Coding::kPhaseRandomized, 0.03, 1.16, 0);
  const auto gains = model_gains(ch, 0.02, 0.1);
  const YieldBoundTable bounds(gains, 10);
  const auto link = link_efficiencies(ch);
  double dense = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = 1e-5 * std::pow(1e5, i / 1999.0);
    const OperatingPoint op(x / link.eta_a, x / link.eta_b, 0.03);
    const auto p2 = protocol2_point(ch, op, bounds);
    dense = std::max(dense, two_way_rate(p2.observables, 1.16, 0).rate);
  }
  CHECK(opt.rate == doctest::Approx(dense).epsilon(1e-5));
  // reproduces the expected curve level around 16 dB total loss
  CHECK(opt.rate > 5e-4);
  CHECK(opt.rate < 1e-2);
  const auto p2 = protocol2_point(
      ch, OperatingPoint(opt.mu_a, opt.x / link.eta_b, 0.03), bounds);
  CHECK(p2.e_x_upper < 0.5);
}

TEST_CASE("optimizer reports the search minimum when no key is possible") {
  const ChannelParams ch = paper_channel(100);
  // f h(0.4) > 1: no intensity can produce a positive rate
  const auto opt = optimize_intensity(ch, Coding::kCatState, 0.4, 1.16, 0);
  CHECK(opt.rate == 0.0);
  CHECK(opt.x == 1e-5);
  const auto link = link_efficiencies(ch);
  CHECK(opt.mu_a == doctest::Approx(1e-5 / link.eta_a).epsilon(1e-15));
}

TEST_CASE("optimizer is deterministic") {
  const ChannelParams ch = paper_channel(150);
  const auto a = optimize_intensity(ch, Coding::kPhaseRandomized, 0.03, 1.16, 0);
  const auto b = optimize_intensity(ch, Coding::kPhaseRandomized, 0.03, 1.16, 0);
  CHECK(a.mu_a == b.mu_a);
  CHECK(a.rate == b.rate);
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.distances_km = {100.0, 50.0};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec.distances_km = {50.0, 100.0};
  spec.asymmetry_ratio = 1.0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec.asymmetry_ratio = 0.5;
  spec.protocols.clear();
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("empty sweep yields empty output") {
  SweepSpec spec;
  spec.distances_km = {};
  CHECK(run_sweep(spec).empty());
}

TEST_CASE("zero-distance sweep row carries maximal rates and infinite bound") {
  SweepSpec spec;
  spec.distances_km = {0.0};
  spec.e_dz = 0.0;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  const CurvePoint& r = rows.front();
  CHECK(r.error.empty());
  CHECK(r.rate_p1_oneway > 0.0);
  CHECK(r.rate_p2 > 0.0);
  CHECK(std::isinf(r.plob));
  CHECK(r.total_loss_db == 0.0);
}

TEST_CASE("sweep output is bit-identical across runs") {
  SweepSpec spec;
  spec.distances_km = {50.0, 150.0, 250.0};
  const auto a = run_sweep(spec);
  const auto b = run_sweep(spec);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(std::memcmp(&a[i].distance_km, &b[i].distance_km, 9 * sizeof(double)) == 0);
  }
}

TEST_CASE("rates decrease with distance on the symmetric sweep") {
  SweepSpec spec;
  spec.distances_km = {50.0, 150.0, 250.0, 350.0};
  const auto rows = run_sweep(spec);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].rate_p1_oneway <= rows[i - 1].rate_p1_oneway * (1.0 + 1e-9));
    CHECK(rows[i].rate_p2 <= rows[i - 1].rate_p2 * (1.0 + 1e-9));
  }
}

TEST_CASE("symmetric channel dominates the asymmetric split") {
  SweepSpec sym;
  sym.distances_km = {100.0, 200.0, 300.0};
  sym.protocols = {SweepProtocol::kCatOneWay};
  SweepSpec asym = sym;
  asym.asymmetry_ratio = 0.7;
  const auto rows_s = run_sweep(sym);
  const auto rows_a = run_sweep(asym);
  for (size_t i = 0; i < rows_s.size(); ++i) {
    CHECK(rows_s[i].rate_p1_oneway >= rows_a[i].rate_p1_oneway - 1e-15);
  }
}

TEST_CASE("per-row failures are recorded without aborting the sweep") {
  SweepSpec spec;
  spec.beta_db_per_km = 1000.0;  // the far rows underflow to zero efficiency
  spec.distances_km = {0.0, 400.0};
  spec.protocols = {SweepProtocol::kCatOneWay};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[1].error.empty());
}

TEST_CASE("unselected protocols stay unset") {
  SweepSpec spec;
  spec.distances_km = {100.0};
  spec.protocols = {SweepProtocol::kCatOneWay};
  const auto rows = run_sweep(spec);
  CHECK_FALSE(std::isnan(rows[0].rate_p1_oneway));
  CHECK(std::isnan(rows[0].rate_p1_k1));
  CHECK(std::isnan(rows[0].rate_p2));
  CHECK(std::isnan(rows[0].plob));
  CHECK(std::isnan(rows[0].mu_opt_p2));
}

TEST_CASE("per-second scaling multiplies rates by the repetition rate") {
  SweepSpec spec;
  spec.distances_km = {100.0};
  spec.protocols = {SweepProtocol::kCatOneWay, SweepProtocol::kPlob};
  SweepSpec scaled = spec;
  scaled.rates_per_second = true;
  scaled.rep_rate_hz = 1e9;
  const auto base = run_sweep(spec);
  const auto fast = run_sweep(scaled);
  CHECK(fast[0].rate_p1_oneway ==
        doctest::Approx(base[0].rate_p1_oneway * 1e9).epsilon(1e-12));
  CHECK(fast[0].plob == doctest::Approx(base[0].plob * 1e9).epsilon(1e-12));
  CHECK(fast[0].mu_opt_p1 == base[0].mu_opt_p1);
}

TEST_CASE("point report matches the one-row sweep") {
  SweepSpec spec;
  spec.distances_km = {100.0};
  const auto rows = run_sweep(spec);
  const PointReport rep = compute_point_report(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rep.distance_km == rows[0].distance_km);
  CHECK(rep.total_loss_db == rows[0].total_loss_db);
  CHECK(rep.p1_rate_oneway == doctest::Approx(rows[0].rate_p1_oneway).epsilon(1e-12));
  CHECK(rep.p1_rate_k1 == doctest::Approx(rows[0].rate_p1_k1).epsilon(1e-12));
  CHECK(rep.p2_rate == doctest::Approx(rows[0].rate_p2).epsilon(1e-12));
  CHECK(rep.p1_mu_opt == doctest::Approx(rows[0].mu_opt_p1).epsilon(1e-12));
  CHECK(rep.plob == doctest::Approx(rows[0].plob).epsilon(1e-12));
  CHECK(std::isfinite(rep.p1_q_z));
  CHECK(std::isfinite(rep.p1_e_z));
  CHECK(std::isfinite(rep.p1_e_x));
  CHECK(std::isfinite(rep.p2_e_x_upper));

  SweepSpec two = spec;
  two.distances_km = {100.0, 200.0};
  CHECK_THROWS_AS(compute_point_report(two), std::invalid_argument);
}
