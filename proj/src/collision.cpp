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

#include "anatomy/collision.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace anatomy {

Matrix2c sigma_minus() {
  Matrix2c s = Matrix2c::Zero();
  s(0, 1) = 1.0;
  return s;
}

Matrix2c projector(Outcome eps) {
  Matrix2c p = Matrix2c::Zero();
  p(index(eps), index(eps)) = 1.0;
  return p;
}

bool QubitMatrix::satisfies_invariants(double tol) const {
  if ((value - value.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  const Eigen::SelfAdjointEigenSolver<Matrix2c> solver(value, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  switch (role) {
    case QubitRole::state:
      return std::abs(value.trace().real() - 1.0) <= tol && ev.minCoeff() >= -tol;
    case QubitRole::effect:
      return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
    case QubitRole::projector:
      return ((value * value) - value).cwiseAbs().maxCoeff() <= tol;
  }
  return false;
}

namespace {

// Superoperator of X -> left * X * right on column-major vec(X).
Matrix4c sandwich(const Matrix2c& left, const Matrix2c& right) {
  Matrix4c out;
  const Matrix2c rt = right.transpose();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.block<2, 2>(2 * a, 2 * b) = rt(a, b) * left;
  return out;
}

Eigen::Vector4cd vec(const Matrix2c& m) { return Eigen::Map<const Eigen::Vector4cd>(m.data()); }

Matrix2c unvec(const Eigen::Vector4cd& v) { return Eigen::Map<const Matrix2c>(v.data()); }

}  // namespace

CollisionMap::CollisionMap(const GateConfig& cfg) {
  cfg.validate();
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c s = sigma_minus();
  const Matrix2c sd = s.adjoint();
  const Matrix2c drive = sd - s;
  const Matrix2c n_e = sd * s;
  const double omega = cfg.omega();
  generator_ = 0.5 * omega * (sandwich(drive, id) - sandwich(id, drive)) +
               cfg.gamma * (sandwich(s, sd) - 0.5 * sandwich(n_e, id) - 0.5 * sandwich(id, n_e));
  const Matrix4c scaled = generator_ * Complex(cfg.dt());
  full_ = scaled.exp();
  half_ = (scaled * Complex(0.5)).exp();
}

Matrix2c CollisionMap::apply(const Matrix4c& map, const Matrix2c& rho) {
  return unvec(map * vec(rho));
}

// Tr{E map(rho)} = vec(E^T)^T map vec(rho), so the adjoint acts as map^T on vec(E^T).
Matrix2c CollisionMap::apply_adjoint(const Matrix4c& map, const Matrix2c& effect) {
  return unvec(map.transpose() * vec(effect.transpose())).transpose();
}

std::vector<Matrix2c> forward_propagate(const GateConfig& cfg, const Matrix2c& rho0) {
  const QubitMatrix initial{rho0, QubitRole::state};
  if (!initial.satisfies_invariants(1e-10)) {
    throw std::invalid_argument("forward_propagate: initial state must be a normalised density matrix");
  }
  const CollisionMap map(cfg);
  std::vector<Matrix2c> rho;
  rho.reserve(cfg.n_bins + 1);
  rho.push_back(rho0);
  for (int n = 0; n < cfg.n_bins; ++n) rho.push_back(map.step(rho.back()));
  return rho;
}

std::vector<Matrix2c> forward_propagate(const GateConfig& cfg) {
  return forward_propagate(cfg, projector(Outcome::g));
}

std::vector<Matrix2c> backward_propagate(const GateConfig& cfg, Outcome eps) {
  const CollisionMap map(cfg);
  std::vector<Matrix2c> effect(cfg.n_bins + 1);
  effect[cfg.n_bins] = projector(eps);
  for (int n = cfg.n_bins - 1; n >= 0; --n) effect[n] = map.adjoint_step(effect[n + 1]);
  return effect;
}

WeakTrajectory compute_trajectory(const GateConfig& cfg) {
  const CollisionMap map(cfg);
  const int n_bins = cfg.n_bins;
  const double h = cfg.dt();
  const Matrix2c s = sigma_minus();
  const Matrix2c sd = s.adjoint();

  WeakTrajectory traj;
  traj.cfg = cfg;
  traj.rho = forward_propagate(cfg);

  std::vector<Matrix2c> rho_mid(n_bins + 1);
  for (int n = 0; n < n_bins; ++n) rho_mid[n] = map.half_step(traj.rho[n]);
  rho_mid[n_bins] = traj.rho[n_bins];

  traj.sigma_unconditional.resize(n_bins + 1);
  traj.cum_dN_unconditional = VectorXr::Zero(n_bins + 1);
  for (int n = 0; n <= n_bins; ++n) {
    traj.sigma_unconditional[n] = (s * rho_mid[n]).trace();
    if (n < n_bins) {
      const double rate = cfg.gamma * rho_mid[n](1, 1).real() -
                          cfg.omega() * traj.sigma_unconditional[n].real();
      traj.cum_dN_unconditional[n + 1] = traj.cum_dN_unconditional[n] + h * rate;
    }
  }

  for (Outcome eps : kOutcomes) {
    const int k = index(eps);
    traj.effect[k] = backward_propagate(cfg, eps);
    const auto& effect = traj.effect[k];
    const double P = (effect[0] * traj.rho[0]).trace().real();
    traj.P[k] = P;
    traj.sigma[k].assign(n_bins + 1, Complex(std::nan(""), 0.0));
    traj.J[k] = VectorXr::Constant(n_bins + 1, std::nan(""));
    traj.cum_dN[k] = VectorXr::Constant(n_bins + 1, std::nan(""));
    if (P < kMinPostSelection) continue;

    traj.cum_dN[k][0] = 0.0;
    for (int n = 0; n <= n_bins; ++n) {
      const Matrix2c e_mid = n < n_bins ? map.adjoint_half_step(effect[n + 1]) : effect[n_bins];
      const Matrix2c jumped = s * rho_mid[n];
      traj.sigma[k][n] = (e_mid * jumped).trace() / P;
      traj.J[k][n] = (e_mid * jumped * sd).trace().real() / P;
      if (n < n_bins) {
        const double rate = cfg.gamma * traj.J[k][n] - cfg.omega() * traj.sigma[k][n].real();
        traj.cum_dN[k][n + 1] = traj.cum_dN[k][n] + h * rate;
      }
    }
  }
  return traj;
}

namespace {

void require_post_selection(const WeakTrajectory& traj, Outcome eps) {
  if (!traj.post_selectable(eps)) throw PostSelectionError(eps, traj.P[index(eps)]);
}

void require_index(const WeakTrajectory& traj, int n) {
  if (n < 0 || n > traj.n_bins()) throw std::out_of_range("bin index outside [0, N]");
}

}  // namespace

Complex weak_sigma(const WeakTrajectory& traj, Outcome eps, int n) {
  require_post_selection(traj, eps);
  require_index(traj, n);
  return traj.sigma[index(eps)][n];
}

double weak_jump(const WeakTrajectory& traj, Outcome eps, int n) {
  require_post_selection(traj, eps);
  require_index(traj, n);
  return traj.J[index(eps)][n];
}

Complex weak_fluorescence_mean(const WeakTrajectory& traj, Outcome eps, int n) {
  return -std::sqrt(traj.cfg.gamma) * weak_sigma(traj, eps, n);
}

Complex weak_output_mean(const WeakTrajectory& traj, Outcome eps, int n) {
  return traj.cfg.input_mean() + weak_fluorescence_mean(traj, eps, n);
}

Complex output_mean(const WeakTrajectory& traj, int n) {
  require_index(traj, n);
  return traj.cfg.input_mean() - std::sqrt(traj.cfg.gamma) * traj.sigma_unconditional[n];
}

double delta_n_exact(const WeakTrajectory& traj, Outcome eps) {
  require_post_selection(traj, eps);
  return traj.cum_dN[index(eps)][traj.n_bins()];
}

double delta_n_exact(const GateConfig& cfg, Outcome eps) {
  return delta_n_exact(compute_trajectory(cfg), eps);
}

VectorXr cumulative_delta_n(const WeakTrajectory& traj, Outcome eps) {
  require_post_selection(traj, eps);
  return traj.cum_dN[index(eps)];
}

VectorXr cumulative_delta_n(const GateConfig& cfg, Outcome eps) {
  return cumulative_delta_n(compute_trajectory(cfg), eps);
}

double emission_integral(const WeakTrajectory& traj, Outcome eps) {
  require_post_selection(traj, eps);
  const auto& J = traj.J[index(eps)];
  return traj.cfg.gamma * traj.cfg.dt() * J.head(traj.n_bins()).sum();
}

}  // namespace anatomy
