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

#pragma once

#include <array>
#include <vector>

#include "anatomy/config.hpp"
#include "anatomy/types.hpp"

namespace anatomy {

/// Qubit lowering operator |g><e| in the basis {g, e}.
Matrix2c sigma_minus();
Matrix2c projector(Outcome eps);

enum class QubitRole { state, effect, projector };

/// 2x2 operator on the qubit together with the constraints its role imposes.
struct QubitMatrix {
  Matrix2c value;
  QubitRole role;

  /// Hermiticity plus the role-specific spectrum or idempotency check.
  bool satisfies_invariants(double tol = 1e-10) const;
};

/// One-step propagators of the qubit reduced dynamics in the displaced frame:
/// resonant drive (omega / 2)[sigma^+ - sigma, rho] plus decay into the
/// waveguide. The step map is the exact exponential of the generator over
/// one bin, so it is completely positive and trace preserving; effects are
/// pulled back with its exact adjoint.
class CollisionMap {
 public:
  explicit CollisionMap(const GateConfig& cfg);

  Matrix2c step(const Matrix2c& rho) const { return apply(full_, rho); }
  Matrix2c half_step(const Matrix2c& rho) const { return apply(half_, rho); }
  Matrix2c adjoint_step(const Matrix2c& effect) const { return apply_adjoint(full_, effect); }
  Matrix2c adjoint_half_step(const Matrix2c& effect) const { return apply_adjoint(half_, effect); }

  /// Generator acting on column-major vec(rho).
  const Matrix4c& generator() const { return generator_; }

 private:
  static Matrix2c apply(const Matrix4c& map, const Matrix2c& rho);
  static Matrix2c apply_adjoint(const Matrix4c& map, const Matrix2c& effect);

  Matrix4c generator_;
  Matrix4c full_;
  Matrix4c half_;
};

/// Qubit states rho_q(t_n), n = 0..N, starting from |g><g|.
std::vector<Matrix2c> forward_propagate(const GateConfig& cfg);
/// As above from an explicit initial state; rejects non-normalised or
/// non-positive input with std::invalid_argument.
std::vector<Matrix2c> forward_propagate(const GateConfig& cfg, const Matrix2c& rho0);

/// Effect matrices E_eps(tau, t_n), n = 0..N, with E_eps(tau, tau) = |eps><eps|.
std::vector<Matrix2c> backward_propagate(const GateConfig& cfg, Outcome eps);

/// Forward states, backward effects and the conditional (weak) values built
/// from them.
///
/// Bin n spans [t_n, t_{n+1}]. Its weak values pair E(tau, t_{n+1}) with
/// rho(t_n), both carried to the bin centre by half a step, so the
/// jump operator acts mid-bin:
///   <sigma>_eps(n) = Tr{E_{n+1/2} sigma rho_{n+1/2}} / P_eps
///   J_eps(n)       = Tr{E_{n+1/2} sigma rho_{n+1/2} sigma^+} / P_eps
/// Index N (no bin left) uses E = |eps><eps| and rho(tau).
struct WeakTrajectory {
  GateConfig cfg;
  std::vector<Matrix2c> rho;                     ///< N + 1
  std::array<std::vector<Matrix2c>, 2> effect;   ///< N + 1 per outcome
  std::array<double, 2> P{};                     ///< post-selection probabilities
  std::array<std::vector<Complex>, 2> sigma;     ///< N + 1 per outcome
  std::array<VectorXr, 2> J;                     ///< N + 1 per outcome
  std::array<VectorXr, 2> cum_dN;                ///< N + 1 per outcome, cum_dN(0) = 0
  std::vector<Complex> sigma_unconditional;      ///< N + 1, Tr{sigma rho} per bin
  VectorXr cum_dN_unconditional;                 ///< N + 1

  int n_bins() const { return cfg.n_bins; }
  double time(int n) const { return n * cfg.dt(); }
  bool post_selectable(Outcome eps) const { return P[index(eps)] >= kMinPostSelection; }
};

WeakTrajectory compute_trajectory(const GateConfig& cfg);

/// Weak value of sigma for bin n. Throws PostSelectionError when P_eps < 1e-12.
Complex weak_sigma(const WeakTrajectory& traj, Outcome eps, int n);
/// gamma J_eps(n) / gamma, the post-selected emission density (dimensionless).
double weak_jump(const WeakTrajectory& traj, Outcome eps, int n);

/// -sqrt(gamma) <sigma>_eps: the post-selected fluorescence amplitude.
Complex weak_fluorescence_mean(const WeakTrajectory& traj, Outcome eps, int n);
/// <b_out>_eps = <b_in> - sqrt(gamma) <sigma>_eps, units time^{-1/2}. Real and
/// imaginary parts are the two quadrature weak values.
Complex weak_output_mean(const WeakTrajectory& traj, Outcome eps, int n);
/// Unconditioned output mean <b_in> - sqrt(gamma) Tr{sigma rho}.
Complex output_mean(const WeakTrajectory& traj, int n);

/// Post-selected change of the field excitation number,
///   int_0^tau dt (gamma J_eps(t) - omega Re<sigma(t)>_eps),
/// by midpoint quadrature on the collision grid.
double delta_n_exact(const WeakTrajectory& traj, Outcome eps);
double delta_n_exact(const GateConfig& cfg, Outcome eps);
/// Running integral, N + 1 points with value 0 at t = 0.
VectorXr cumulative_delta_n(const WeakTrajectory& traj, Outcome eps);
VectorXr cumulative_delta_n(const GateConfig& cfg, Outcome eps);

/// int_0^tau gamma J_eps dt.
double emission_integral(const WeakTrajectory& traj, Outcome eps);

}  // namespace anatomy
