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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "anatomy/collision.hpp"
#include "anatomy/husimi.hpp"
#include "anatomy/sweep.hpp"
#include "anatomy/wigner.hpp"

namespace anatomy {

/// Shortest round-trip-safe decimal form used in every CSV ("%.12g", "nan").
std::string format_number(double v);

std::string trajectory_csv(const WeakTrajectory& traj);
/// t, cum_dN, minus_rho_ee: the unconditional field change and its balance.
std::string unconditional_csv(const WeakTrajectory& traj);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string wigner_csv(const WignerGrid& grid);
std::string husimi_csv(const HusimiSlice& slice);
nlohmann::json husimi_sidecar(const HusimiSlice& slice);
nlohmann::json config_json(const GateConfig& cfg);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

/// Line plot with axes fitted to the data range plus 5% padding.
std::string svg_line_plot(std::string_view title, std::string_view x_label,
                          std::string_view y_label, const std::vector<Series>& series);

/// Heatmap of values(i, j) with x along i and y along j. The colour scale is
/// symmetric about zero: red positive, blue negative.
std::string svg_heatmap(std::string_view title, const MatrixXr& values, double x_min,
                        double x_max, double y_min, double y_max);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Everything needed to reproduce one CLI run plus checksums of its outputs.
struct RunManifest {
  GateConfig cfg;
  std::string subcommand;
  std::filesystem::path out_dir;
  std::string version;
  double wall_clock_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> inputs;   ///< path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  ///< file name, sha256

  /// Writes `content` into out_dir / name and records its checksum.
  void write(const std::string& name, std::string_view content);
  nlohmann::json to_json() const;
};

}  // namespace anatomy
