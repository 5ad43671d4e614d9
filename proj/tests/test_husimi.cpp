// Copyright 2026 The Anatomy Authors
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

#include <doctest.h>

#include <numbers>

#include "anatomy/husimi.hpp"

using namespace anatomy;
using std::numbers::pi;

namespace {

const GateConfig& reference() {
  static const GateConfig cfg = GateConfig::from_dimensionless(0.075, 0.93, 4000);
  return cfg;
}

const WeakTrajectory& reference_trajectory() {
  static const WeakTrajectory traj = compute_trajectory(reference());
  return traj;
}

const WaveAmplitudes& reference_amplitudes() {
  static const WaveAmplitudes amps(reference(), 2);
  return amps;
}

HusimiSlice coherent_slice(Complex beta) {
  HusimiSlice q;
  q.center = beta;
  q.dt = 1.0;
  sample(q, GridSpec{6.0, 0.05});
  return q;
}

constexpr std::array<int, 5> kBins{0, 1000, 2000, 3000, 3999};

}  // namespace

TEST_CASE("decay-free slice is the vacuum Gaussian at the origin") {
  const GateConfig cfg = GateConfig::from_dimensionless(0.0, 0.6, 100);
  const WeakTrajectory traj = compute_trajectory(cfg);
  const HusimiSlice q = husimi_effect_route(traj, Outcome::g, 40);
  CHECK(q.center == Complex(0.0, 0.0));
  CHECK(q.B == 0.0);
  CHECK(std::abs(q.C) == 0.0);
  CHECK(std::abs(q.value_at(0.0) - 1.0 / pi) <= 1e-15);
  CHECK(std::abs(q.value_at(Complex(0.3, -0.4)) - std::exp(-0.25) / pi) <= 1e-15);
}

TEST_CASE("zero pulse area gives the vacuum on the wavefunction route") {
  const GateConfig cfg = GateConfig::from_dimensionless(0.075, 0.0, 200);
  const WaveAmplitudes amps(cfg, 2);
  const HusimiSlice q = husimi_wavefunction_route(amps, Outcome::g, 100);
  CHECK(q.B == 0.0);
  CHECK(std::abs(q.C) == 0.0);
  CHECK(std::abs(q.integral() - 1.0) <= 1e-4);
}

TEST_CASE("both routes agree and integrate to one") {
  const auto& traj = reference_trajectory();
  const auto& amps = reference_amplitudes();
  const double tol = 10.0 * std::pow(reference().dt(), 1.5);
  for (Outcome eps : kOutcomes) {
    for (int n : kBins) {
      const HusimiSlice a = husimi_effect_route(traj, eps, n);
      const HusimiSlice b = husimi_wavefunction_route(amps, eps, n);
      CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= tol);
      CHECK(std::abs(a.integral() - 1.0) <= 1e-4);
      CHECK(std::abs(b.integral() - 1.0) <= 1e-4);
      CHECK(a.min_value() >= -10.0 * reference().dt());
      CHECK(a.boundary_mass() <= 1e-8);
    }
  }
}

TEST_CASE("first moment is the coherent offset minus the fluorescence") {
  const auto& traj = reference_trajectory();
  for (Outcome eps : kOutcomes) {
    for (int n : kBins) {
      const HusimiSlice q = husimi_effect_route(traj, eps, n);
      const Complex expected = reference().alpha_bin() - std::sqrt(reference().gamma * q.dt) *
                                                             weak_sigma(traj, eps, n);
      CHECK(std::abs(moment(q, 0, 1) - expected) <= 1e-14);
      CHECK(std::abs(moment_numeric(q, 0, 1) - expected) <= 1e-6);
    }
  }
}

TEST_CASE("grid moments reproduce the analytic moments") {
  const HusimiSlice q = husimi_effect_route(reference_trajectory(), Outcome::g, 2000);
  for (auto [m, l] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}}) {
    CHECK(std::abs(moment(q, m, l) - moment_numeric(q, m, l)) <= 1e-6);
  }
  CHECK_THROWS_AS(moment(q, -1, 0), std::invalid_argument);
}

TEST_CASE("halving the grid step leaves the integral unchanged") {
  HusimiSlice q = husimi_effect_route(reference_trajectory(), Outcome::e, 1500);
  const double coarse = q.integral();
  sample(q, GridSpec{5.0, 0.025});
  CHECK(std::abs(q.integral() - coarse) <= 1e-6);
}

TEST_CASE("coherent state moments") {
  for (Complex beta : {Complex(0.0, 0.0), Complex(0.7, -0.2)}) {
    const HusimiSlice q = coherent_slice(beta);
    const double r2 = std::norm(beta);
    CHECK(std::abs(moment(q, 0, 0) - 1.0) <= 1e-14);
    CHECK(std::abs(moment(q, 0, 1) - beta) <= 1e-14);
    CHECK(std::abs(moment(q, 1, 1) - (r2 + 1.0)) <= 1e-14);
    CHECK(std::abs(moment(q, 2, 2) - (r2 * r2 + 4.0 * r2 + 2.0)) <= 1e-12);
    CHECK(std::abs(moment_numeric(q, 2, 2) - moment(q, 2, 2)) <= 1e-6);
  }
}

TEST_CASE("intensity moments reconstruct the photon number change") {
  const auto& traj = reference_trajectory();
  for (Outcome eps : kOutcomes) {
    CHECK(std::abs(delta_n_from_intensity(traj, eps) - delta_n_exact(traj, eps)) <= 1e-9);
  }
  const HusimiSlice q = husimi_effect_route(traj, Outcome::g, 10);
  const double expected = reference().gamma * weak_jump(traj, Outcome::g, 10) -
                          reference().omega() * weak_sigma(traj, Outcome::g, 10).real();
  CHECK(std::abs(intensity_weak_value(q) - input_intensity(reference()) - expected) <= 1e-6);
}

TEST_CASE("narrow grids are rejected for intensity moments") {
  const HusimiSlice q =
      husimi_effect_route(reference_trajectory(), Outcome::g, 10, GridSpec{1.0, 0.1});
  CHECK_THROWS_AS(intensity_weak_value(q), GridTruncationError);
}

TEST_CASE("wavefunction route argument checks") {
  const GateConfig cfg = GateConfig::from_dimensionless(0.075, 0.93, 100);
  const WaveAmplitudes one(cfg, 1);
  CHECK_THROWS_AS(husimi_wavefunction_route(one, Outcome::g, 3), std::invalid_argument);
  const WaveAmplitudes two(cfg, 2);
  CHECK_THROWS_AS(husimi_wavefunction_route(two, Outcome::g, 100), std::out_of_range);
}

TEST_CASE("truncated photon number change") {
  const GateConfig cfg = reference();
  const auto& amps = reference_amplitudes();
  const auto& traj = reference_trajectory();
  for (Outcome eps : kOutcomes) {
    const TruncatedDeltaN two = delta_n_truncated(amps, cfg, eps);
    CHECK(!two.no_fluorescence);
    CHECK(std::abs(two.value - delta_n_exact(traj, eps)) <= 0.05);
  }
  GateConfig one = cfg;
  one.photon_cap = 1;
  CHECK(std::abs(delta_n_truncated(amps, one, Outcome::g).value -
                 delta_n_exact(traj, Outcome::g)) > 0.05);

  const GateConfig free = GateConfig::from_dimensionless(0.0, 0.6, 100);
  const TruncatedDeltaN none = delta_n_truncated(WaveAmplitudes(free, 2), free, Outcome::g);
  CHECK(none.no_fluorescence);
  CHECK(none.value == 0.0);

  GateConfig high = cfg;
  high.photon_cap = 2;
  CHECK_THROWS_AS(delta_n_truncated(WaveAmplitudes(cfg, 1), high, Outcome::g), std::invalid_argument);
}
