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

#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "anatomy/types.hpp"

namespace anatomy {

/// Physical and numerical parameters of one gate.
///
/// Time is measured in units where the pulse lasts `tau`. The drive is
/// resonant and the pulse is square, so the Rabi frequency is theta / tau.
/// The omega_0 mode is quantised over a window equal to the pulse length,
/// which fixes the coherent amplitude of the input pulse to
/// alpha = (theta / 2) / sqrt(gamma * tau).
struct GateConfig {
  double gamma = 3.0 / 40.0;  ///< decay rate into the waveguide
  double tau = 1.0;           ///< pulse duration
  double theta = 0.93 * 3.14159265358979323846;  ///< pulse area
  int n_bins = 4000;          ///< collision time bins over [0, tau]
  int photon_cap = 2;         ///< emitted photons kept in truncated expansions
  GridSpec wigner_grid{3.5, 0.02};

  /// gamma_tau and theta_over_pi are the dimensionless knobs used by the CLI.
  static GateConfig from_dimensionless(double gamma_tau, double theta_over_pi,
                                       int n_bins = 4000, double tau = 1.0);

  double omega() const { return theta / tau; }
  double dt() const { return tau / n_bins; }
  double gamma_tau() const { return gamma * tau; }
  double theta_over_pi() const;

  /// Coherent amplitude of the omega_0 mode. Throws for gamma == 0.
  double alpha() const;
  /// Amplitude of one time-bin mode, alpha * sqrt(dt / tau).
  double alpha_bin() const;
  /// Mean input field <b_in(t)> = alpha / sqrt(tau), units time^{-1/2}.
  double input_mean() const;
  /// Products alpha * sqrt(gamma) stay finite as gamma -> 0.
  double alpha_sqrt_gamma() const { return 0.5 * theta / std::sqrt(tau); }

  /// Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

/// Applies one `key = value` setting; keys are the config-file names
/// (gamma_tau, theta_over_pi, n_bins, photon_cap, grid_half_width, grid_step).
void apply_setting(GateConfig& cfg, std::string_view key, std::string_view value);

/// Parses a flat key-value file. Blank lines and `#` comments are ignored.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

GateConfig load_config(const std::filesystem::path& path, GateConfig base = {});

}  // namespace anatomy
