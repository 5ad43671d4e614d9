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

#include <unsupported/Eigen/MatrixFunctions>

#include "anatomy/amplitudes.hpp"
#include "anatomy/collision.hpp"
#include "anatomy/oracle.hpp"
#include "anatomy/wigner.hpp"

using namespace anatomy;

namespace {

// Single-bin propagator on qubit (x) Fock(0..levels-1), built from Kronecker
// products: state index = qubit * levels + photons.
Eigen::VectorXd one_bin_state(const GateConfig& cfg, int levels) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
  s(0, 1) = 1.0;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) b(k - 1, k) = std::sqrt(double(k));
  const Eigen::MatrixXd id_f = Eigen::MatrixXd::Identity(levels, levels);
  const Eigen::MatrixXd sp = s.transpose();
  auto kron = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
    Eigen::MatrixXd out(a.rows() * c.rows(), a.cols() * c.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out.block(i * c.rows(), j * c.cols(), c.rows(), c.cols()) = a(i, j) * c;
    return out;
  };
  const Eigen::MatrixXd gen = 0.5 * cfg.omega() * cfg.dt() * kron(sp - s, id_f) +
                              std::sqrt(cfg.gamma * cfg.dt()) *
                                  (kron(sp, b) - kron(s, Eigen::MatrixXd(b.transpose())));
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(2 * levels);
  psi(0) = 1.0;
  return gen.exp() * psi;
}

const GateConfig& reference() {
  static const GateConfig cfg = GateConfig::from_dimensionless(0.075, 0.93, 4000);
  return cfg;
}

const SectorState& reference_oracle() {
  static const SectorState st = [] {
    GateConfig o = reference();
    o.n_bins = 800;
    return oracle_propagate(o);
  }();
  return st;
}

}  // namespace

TEST_CASE("one collision matches the Fock-space exponential") {
  for (double x : {0.01, 0.5}) {
    GateConfig cfg = GateConfig::from_dimensionless(0.3, x, 1);
    const SectorState st = oracle_propagate(cfg);
    const Eigen::VectorXd psi = one_bin_state(cfg, 4);
    for (int q = 0; q < 2; ++q) {
      CHECK(std::abs(st.vac[q] - psi(q * 4 + 0)) <= 1e-14);
      CHECK(std::abs(st.single[0][q] - psi(q * 4 + 1)) <= 1e-14);
      CHECK(std::abs(st.pairs[0][q] - psi(q * 4 + 2)) <= 1e-14);
    }
    CHECK(std::abs(st.leak - psi(3) * psi(3) - psi(7) * psi(7)) <= 1e-14);
  }
  // Small-angle limit: the excited amplitude is linear in the drive.
  const SectorState weak = oracle_propagate(GateConfig::from_dimensionless(0.0, 1e-4, 1));
  const double theta = 1e-4 * std::numbers::pi;
  CHECK(std::abs(weak.vac[1].real() - std::sin(0.5 * theta)) <= 1e-15);
  CHECK(std::abs(weak.vac[1].real() - 0.5 * theta) <= theta * theta * theta);
  const SectorState lossy = oracle_propagate(GateConfig::from_dimensionless(1e-8, 1e-4, 1));
  CHECK(std::abs(lossy.vac[1].real() - 0.5 * theta) <= theta * theta * theta);
  CHECK(std::abs(lossy.single[0][0]) <= 1e-8);
}

TEST_CASE("without decay the qubit rotates and no photon is emitted") {
  const GateConfig cfg = GateConfig::from_dimensionless(0.0, 0.7, 50);
  const SectorState st = oracle_propagate(cfg);
  CHECK(std::abs(st.vac[0].real() - std::cos(0.35 * std::numbers::pi)) <= 1e-13);
  CHECK(std::abs(st.vac[1].real() - std::sin(0.35 * std::numbers::pi)) <= 1e-13);
  double emitted = 0.0;
  for (const auto& v : st.single) emitted += v.squaredNorm();
  for (const auto& v : st.pairs) emitted += v.squaredNorm();
  CHECK(emitted == 0.0);
}

TEST_CASE("oracle argument checks") {
  GateConfig cfg = GateConfig::from_dimensionless(0.075, 0.93, kOracleMaxBins + 1);
  CHECK_THROWS_AS(oracle_propagate(cfg), std::invalid_argument);
  cfg.n_bins = 10;
  cfg.photon_cap = 3;
  CHECK_THROWS_AS(oracle_propagate(cfg), std::invalid_argument);
  GateConfig strong = GateConfig::from_dimensionless(8.0, 1.0, 200);
  strong.photon_cap = 1;
  CHECK_THROWS_AS(oracle_propagate(strong), CapOverflowError);
}

TEST_CASE("oracle evolution is unitary and leaks little") {
  const SectorState& st = reference_oracle();
  CHECK(st.unitarity_error <= 1e-10);
  CHECK(st.leak <= kOracleMaxLeak);
  CHECK(st.amplitude(Outcome::g, 5, 3) == st.amplitude(Outcome::g, 3, 5));
  CHECK_THROWS_AS(st.amplitude(Outcome::g, 0, 800), std::out_of_range);
}

TEST_CASE("oracle agrees with the analytic modules") {
  const SectorState& st = reference_oracle();
  const double h_o = st.cfg.dt();
  const double tol = std::max(10.0 * h_o, 2e-3);
  const GateConfig& cfg = reference();
  const WeakTrajectory traj = compute_trajectory(cfg);
  const WaveAmplitudes amps(cfg, 2);
  double balance = 0.0;
  for (Outcome eps : kOutcomes) {
    const OracleExtract x = oracle_extract(st, eps);
    CHECK(std::abs(x.P - amps.P(eps)) <= tol);
    CHECK(std::abs(x.f0 - amps.f0(eps)) <= tol);
    for (int n = 0; n < st.n_bins(); n += 53)
      CHECK(std::abs(x.f1[n] - eval_f1(eps, cfg.tau, (n + 0.5) * h_o, cfg)) <= tol);
    for (auto [n, m] : {std::pair{10, 400}, {100, 101}, {300, 799}})
      CHECK(std::abs(oracle_f2(st, eps, n, m) -
                     eval_f2(eps, cfg.tau, (n + 0.5) * h_o, (m + 0.5) * h_o, cfg)) <= tol);
    CHECK(std::abs(x.delta_n - delta_n_exact(traj, eps)) <= tol);
    CHECK((x.zeta - build_zeta(amps, eps).zeta).cwiseAbs().maxCoeff() <= tol);
    CHECK(std::abs(x.zeta.trace() - 1.0) <= 1e-12);
    balance += x.P * x.delta_n;
  }
  CHECK(std::abs(balance + oracle_extract(st, Outcome::e).P) <= 10.0 * h_o);
}

TEST_CASE("zero pulse area leaves the field empty") {
  const SectorState st = oracle_propagate(GateConfig::from_dimensionless(0.075, 0.0, 100));
  const OracleExtract x = oracle_extract(st, Outcome::g);
  CHECK(std::abs(x.P - 1.0) <= 1e-14);
  CHECK(x.f1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(x.delta_n) <= 1e-14);
  CHECK_THROWS_AS(oracle_extract(st, Outcome::e), PostSelectionError);
}

TEST_CASE("oracle photon number change tracks the analytic one as gamma -> 0") {
  for (double gt : {1e-2, 1e-3, 1e-4}) {
    const GateConfig cfg = GateConfig::from_dimensionless(gt, 0.75, 400);
    const SectorState st = oracle_propagate(cfg);
    for (Outcome eps : kOutcomes)
      CHECK(std::abs(oracle_extract(st, eps).delta_n - delta_n_exact(cfg, eps)) <=
            10.0 * cfg.dt());
  }
}

TEST_CASE("amplitude error halves when the oracle grid is refined") {
  const GateConfig& cfg = reference();
  auto f1_error = [&](int n_o) {
    GateConfig o = cfg;
    o.n_bins = n_o;
    o.photon_cap = 1;
    const SectorState st = oracle_propagate(o);
    double err = 0.0;
    for (Outcome eps : kOutcomes) {
      const OracleExtract x = oracle_extract(st, eps);
      for (int n = 0; n < n_o; ++n)
        err = std::max(err, std::abs(x.f1[n] - eval_f1(eps, cfg.tau, (n + 0.5) * o.dt(), cfg)));
    }
    return err;
  };
  const double order = std::log2(f1_error(400) / f1_error(800));
  CHECK(order >= 0.95);
  CHECK(order <= 1.1);
}
