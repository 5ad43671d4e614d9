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

#include "anatomy/amplitudes.hpp"

namespace anatomy {

/// Overlaps of the emission amplitudes with the flat-top omega_0 mode:
/// f1t = (1/sqrt(tau)) int f1 dt, f2t = (1/tau) int int_{t' < t} f2 dt' dt.
struct ModeOverlaps {
  double f1t = 0.0;
  double f2t = 0.0;
};

ModeOverlaps mode_overlaps(const WaveAmplitudes& amps, Outcome eps);

/// Reduced state of the omega_0 mode in the displaced frame, Fock basis
/// {0, 1, 2}. The full field state is D(alpha) zeta D(alpha)^+.
struct SingleModeState {
  Matrix3c zeta = Matrix3c::Zero();
  ModeOverlaps overlaps;
  double f0 = 0.0;
  double P = 1.0;
  Outcome eps = Outcome::g;
  /// Coherent offset alpha; 0 when gamma = 0 (offset undefined).
  Complex offset;
  bool offset_defined = false;

  /// Builds a state from an explicit matrix, e.g. |1><1| for tests.
  static SingleModeState from_matrix(const Matrix3c& zeta, Complex offset = 0.0);
};

/// Photon-cap-2 reduced state. The vacuum entry absorbs the weight of
/// photons emitted outside the omega_0 mode so that the trace is 1.
/// Throws std::runtime_error when an eigenvalue falls below -1e-6.
SingleModeState build_zeta(const WaveAmplitudes& amps, Outcome eps);

/// Wigner function of a displaced-frame state at beta = mu - offset, written
/// with Laguerre polynomials L1, L2 of 4|beta|^2.
double wigner_closed_form(const Matrix3c& zeta, Complex beta);
/// Same function from the generic Fock-basis kernel
///   W_{|n+d><n|}(beta) = (2/pi)(-1)^n sqrt(n!/(n+d)!) (2 conj(beta))^d
///                        exp(-2|beta|^2) L_n^(d)(4|beta|^2)
/// summed over every matrix element; any dimension.
double wigner_fock_kernel(const Eigen::MatrixXcd& rho, Complex beta);

struct WignerGrid {
  Complex center;
  GridSpec grid;
  MatrixXr values;  ///< values(i, j) at center + x_i + i y_j
  double integral = 0.0;
  double abs_integral = 0.0;
  double boundary_mass = 0.0;
  bool truncated = false;  ///< boundary mass above 1e-8

  double cell_area() const { return grid.step * grid.step; }
  double min_value() const { return values.minCoeff(); }
};

/// Samples the closed form on `grid` centred at state.offset.
WignerGrid wigner_eval(const SingleModeState& state, const GridSpec& grid = {3.5, 0.02});

/// int |W| d^2mu - 1, floored at 0.
double negativity(const WignerGrid& grid);

/// Delta N(omega_0) = <a^+ a> + 2 alpha Re<a> from the entries of zeta.
/// Throws std::domain_error at gamma = 0 where alpha is undefined.
double delta_n_omega0(const SingleModeState& state);
/// Same quantity as int (|mu|^2 - 1/2) W d^2mu - |alpha|^2 over the grid.
double delta_n_omega0_wigner(const SingleModeState& state, const WignerGrid& grid);

}  // namespace anatomy
