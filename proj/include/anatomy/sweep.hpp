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

#include <optional>
#include <vector>

#include "anatomy/config.hpp"

namespace anatomy {

/// One gate angle of a theta sweep. Fields follow the sweep CSV columns.
struct SweepRow {
  double theta_over_pi = 0.0;
  std::array<double, 2> P{};
  std::array<double, 2> dN{};
  std::array<double, 2> dN_omega0{};
  std::array<double, 2> negativity{};
  /// Truncated-wavefunction estimates with photon_cap 1 and 2.
  std::optional<std::array<double, 2>> dN_trunc1;
  std::optional<std::array<double, 2>> dN_trunc2;
};

struct SweepOptions {
  int points = 64;
  bool compare_truncation = false;
  int jobs = 1;
};

/// theta / pi = (k + 1) / points for k = 0..points-1.
std::vector<double> sweep_angles(int points);

SweepRow evaluate_angle(const GateConfig& cfg);

/// Evaluates every angle of the sweep on a pool of `jobs` workers. Rows come
/// back in angle order whatever the completion order.
std::vector<SweepRow> run_sweep(const GateConfig& base, const SweepOptions& options);

}  // namespace anatomy
