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
#include "anatomy/collision.hpp"

namespace anatomy {

enum class HusimiRoute { effect, wavefunction };

std::string_view name(HusimiRoute route);

/// Conditional Husimi function of time-bin mode n,
///
///   Q(s) = exp(-|z|^2) / pi * [A + B (|z|^2 - 1) - 2 Re{conj(z) C}],  z = s - alpha_n,
///
/// sampled on a square grid around alpha_n. The displacement is the standard
/// D(s) = exp(s b^+ - conj(s) b), so the first moment is alpha_n - C.
/// At gamma = 0 the coherent offset is undefined and the slice is centred on
/// the origin of the displaced frame.
struct HusimiSlice {
  int n = 0;
  Outcome eps = Outcome::g;
  HusimiRoute route = HusimiRoute::effect;
  Complex center;  ///< alpha_n
  double dt = 0.0;
  double A = 1.0;
  double B = 0.0;
  Complex C;
  GridSpec grid;
  MatrixXr values;  ///< values(i, j) at center + x_i + i y_j

  double value_at(Complex s) const;
  double point(int i) const { return grid.coordinate(i); }
  double cell_area() const { return grid.step * grid.step; }

  /// Riemann sum of Q over the grid.
  double integral() const;
  double min_value() const { return values.minCoeff(); }
  /// Riemann sum of |Q| over the outermost ring of grid points.
  double boundary_mass() const;
};

/// Fills `values` from the coefficients.
void sample(HusimiSlice& slice, const GridSpec& grid);

/// B = gamma dt J_eps(n), C = sqrt(gamma dt) <sigma>_eps(n).
HusimiSlice husimi_effect_route(const WeakTrajectory& traj, Outcome eps, int n,
                                const GridSpec& grid = {});

/// Coefficients from the truncated wavefunction with one- and two-photon
/// sums over the partner bins m != n. Requires photon_cap = 2.
HusimiSlice husimi_wavefunction_route(const WaveAmplitudes& amps, Outcome eps, int n,
                                      const GridSpec& grid = {});

/// Antinormally ordered moment int d^2s conj(s)^m s^l Q(s), from Gaussian
/// moment identities applied to the polynomial prefactor.
Complex moment(const HusimiSlice& slice, int m_order, int l_order);
/// Same moment as a Riemann sum over the sampled grid.
Complex moment_numeric(const HusimiSlice& slice, int m_order, int l_order);

/// <b_out^+ b_out>_eps for bin n: (moment(1, 1) - 1) / dt, units 1/time.
/// Throws GridTruncationError when the grid boundary carries more than
/// 1e-8 of mass.
double intensity_weak_value(const HusimiSlice& slice);
/// |alpha_n|^2 / dt, the input intensity subtracted bin by bin.
double input_intensity(const GateConfig& cfg);

/// dt * sum_n (intensity weak value - input intensity), evaluated with the
/// analytic moments of every bin's effect-route slice.
double delta_n_from_intensity(const WeakTrajectory& traj, Outcome eps);

struct TruncatedDeltaN {
  double value = 0.0;
  bool no_fluorescence = false;  ///< gamma = 0: nothing emitted, value is 0
};

/// Change of the field excitation number from the truncated wavefunction:
///   (p1 + 2 p2 + interference) / P_eps
/// where the interference with the coherent drive is written through
/// omega / 2 = alpha sqrt(gamma / tau). cfg.photon_cap = 1 drops every
/// two-photon term, including p2 in P_eps.
TruncatedDeltaN delta_n_truncated(const WaveAmplitudes& amps, const GateConfig& cfg, Outcome eps);

}  // namespace anatomy
