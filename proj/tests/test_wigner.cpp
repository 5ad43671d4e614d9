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
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "anatomy/collision.hpp"
#include "anatomy/wigner.hpp"

using namespace anatomy;
using std::numbers::pi;

namespace {

Matrix3c random_state(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix3c g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = Complex(n(rng), n(rng));
  Matrix3c rho = g * g.adjoint();
  return rho / rho.trace();
}

// (2/pi) Tr{rho D(beta) Parity D(beta)^+} in a Fock space large enough for
// the displaced three-level state.
double displaced_parity(const Matrix3c& zeta, Complex beta) {
  constexpr int dim = 40;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(double(k));
  const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
  const Eigen::MatrixXcd d = gen.exp();
  Eigen::MatrixXcd parity = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) parity(k, k) = k % 2 == 0 ? 1.0 : -1.0;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho.topLeftCorner<3, 3>() = zeta;
  return 2.0 / pi * (rho * d * parity * d.adjoint()).trace().real();
}

Matrix3c fock(int k) {
  Matrix3c m = Matrix3c::Zero();
  m(k, k) = 1.0;
  return m;
}

const WaveAmplitudes& reference_amplitudes() {
  static const WaveAmplitudes amps(GateConfig::from_dimensionless(0.075, 0.93, 4000), 2);
  return amps;
}

}  // namespace

TEST_CASE("no overlaps without decay or drive") {
  const WaveAmplitudes free(GateConfig::from_dimensionless(0.0, 0.6, 200), 2);
  const ModeOverlaps o = mode_overlaps(free, Outcome::g);
  CHECK(o.f1t == 0.0);
  CHECK(o.f2t == 0.0);
  const SingleModeState s = build_zeta(free, Outcome::e);
  CHECK((s.zeta - fock(0)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(!s.offset_defined);
  CHECK_THROWS_AS(delta_n_omega0(s), std::domain_error);

  const WaveAmplitudes idle(GateConfig::from_dimensionless(0.075, 0.0, 200), 2);
  const ModeOverlaps z = mode_overlaps(idle, Outcome::g);
  CHECK(z.f1t == 0.0);
  CHECK(z.f2t == 0.0);
  CHECK(std::abs(delta_n_omega0(build_zeta(idle, Outcome::g))) <= 1e-14);
}

TEST_CASE("single-mode state is a unit-trace positive matrix") {
  for (Outcome eps : kOutcomes) {
    const SingleModeState s = build_zeta(reference_amplitudes(), eps);
    CHECK(std::abs(s.zeta.trace() - 1.0) <= 1e-12);
    CHECK((s.zeta - s.zeta.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    const Eigen::SelfAdjointEigenSolver<Matrix3c> solver(s.zeta);
    CHECK(solver.eigenvalues().minCoeff() >= -1e-6);
  }
  CHECK_THROWS_AS(build_zeta(WaveAmplitudes(GateConfig::from_dimensionless(0.075, 0.5, 50), 1),
                             Outcome::g),
                  std::invalid_argument);
}

TEST_CASE("vacuum and one-photon Wigner functions") {
  CHECK(std::abs(wigner_closed_form(fock(0), 0.0) - 2.0 / pi) <= 1e-15);
  CHECK(std::abs(wigner_closed_form(fock(1), 0.0) + 2.0 / pi) <= 1e-15);
  const Complex beta(0.3, 0.2);
  CHECK(std::abs(wigner_closed_form(fock(0), beta) - 2.0 / pi * std::exp(-2.0 * std::norm(beta))) <=
        1e-15);
}

TEST_CASE("closed form agrees with the Fock kernel and the displaced parity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix3c zeta = random_state(rng);
    for (int k = 0; k < 5; ++k) {
      const Complex beta(u(rng), u(rng));
      const double closed = wigner_closed_form(zeta, beta);
      CHECK(std::abs(closed - wigner_fock_kernel(zeta, beta)) <= 1e-8);
      if (k == 0) CHECK(std::abs(closed - displaced_parity(zeta, beta)) <= 1e-8);
    }
  }
}

TEST_CASE("Fock kernel handles larger truncations") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(5, 5);
  rho(4, 4) = 1.0;
  CHECK(std::abs(wigner_fock_kernel(rho, 0.0) - 2.0 / pi) <= 1e-14);
}

TEST_CASE("negativity of reference states") {
  const WignerGrid one = wigner_eval(SingleModeState::from_matrix(fock(1)));
  CHECK(std::abs(negativity(one) - (4.0 * std::exp(-0.5) - 2.0)) <= 1e-4);
  CHECK(!one.truncated);
  CHECK(std::abs(one.integral - 1.0) <= 1e-4);
  const WignerGrid vac = wigner_eval(SingleModeState::from_matrix(fock(0), Complex(1.2, 0.0)));
  CHECK(negativity(vac) <= 1e-6);
  // The one-photon state has a steep zero ring; its refinement error is
  // 3e-5 from h = 0.02 and meets the 1e-5 bound from h = 0.01.
  CHECK(std::abs(negativity(wigner_eval(SingleModeState::from_matrix(fock(1)), GridSpec{3.5, 0.005})) -
                 negativity(wigner_eval(SingleModeState::from_matrix(fock(1)), GridSpec{3.5, 0.01}))) <= 1e-5);
  const WignerGrid narrow = wigner_eval(SingleModeState::from_matrix(fock(1)), GridSpec{1.0, 0.05});
  CHECK(narrow.truncated);
}

TEST_CASE("gate-state negativity is stable under grid refinement") {
  for (Outcome eps : kOutcomes) {
    const SingleModeState s = build_zeta(reference_amplitudes(), eps);
    CHECK(std::abs(negativity(wigner_eval(s, GridSpec{3.5, 0.01})) - negativity(wigner_eval(s))) <= 1e-5);
  }
}

TEST_CASE("omega_0 photon number from zeta and from the Wigner grid") {
  for (Outcome eps : kOutcomes) {
    const SingleModeState s = build_zeta(reference_amplitudes(), eps);
    const WignerGrid w = wigner_eval(s);
    CHECK(std::abs(w.integral - 1.0) <= 1e-4);
    CHECK(std::abs(delta_n_omega0(s) - delta_n_omega0_wigner(s, w)) <= 1e-4);
  }
}

TEST_CASE("the g outcome has a negative Wigner region, e does not") {
  const WignerGrid g = wigner_eval(build_zeta(reference_amplitudes(), Outcome::g));
  const WignerGrid e = wigner_eval(build_zeta(reference_amplitudes(), Outcome::e));
  CHECK(g.min_value() < 0.0);
  CHECK(negativity(g) > 1e-4);
  CHECK(e.min_value() >= -1e-6);
  CHECK(negativity(e) <= 1e-3);
}
