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

#include "anatomy/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace anatomy {

Outcome parse_outcome(std::string_view s) {
  if (s == "g") return Outcome::g;
  if (s == "e") return Outcome::e;
  throw std::invalid_argument("outcome must be 'g' or 'e', got '" + std::string(s) + "'");
}

PostSelectionError::PostSelectionError(Outcome eps, double probability)
    : std::runtime_error("unlikely post-selection: P_" + std::string(name(eps)) + " = " +
                         std::to_string(probability) + " (weak values diverge)"),
      eps_(eps),
      probability_(probability) {}

GridTruncationError::GridTruncationError(double boundary_mass)
    : std::runtime_error("phase-space grid too narrow: boundary mass " +
                         std::to_string(boundary_mass)),
      boundary_mass_(boundary_mass) {}

int GridSpec::points_per_axis() const {
  return 2 * static_cast<int>(std::lround(half_width / step)) + 1;
}

double GridSpec::coordinate(int i) const {
  const int k = (points_per_axis() - 1) / 2;
  return (i - k) * step;
}

GateConfig GateConfig::from_dimensionless(double gamma_tau, double theta_over_pi, int n_bins,
                                          double tau) {
  GateConfig cfg;
  cfg.tau = tau;
  cfg.gamma = gamma_tau / tau;
  cfg.theta = theta_over_pi * std::numbers::pi;
  cfg.n_bins = n_bins;
  return cfg;
}

double GateConfig::theta_over_pi() const { return theta / std::numbers::pi; }

double GateConfig::alpha() const {
  if (gamma <= 0.0) {
    throw std::domain_error("coherent amplitude undefined for gamma = 0 (window = tau)");
  }
  return 0.5 * theta / std::sqrt(gamma * tau);
}

double GateConfig::alpha_bin() const { return alpha() * std::sqrt(dt() / tau); }

double GateConfig::input_mean() const { return alpha() / std::sqrt(tau); }

void GateConfig::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be > 0");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw std::invalid_argument("theta must be >= 0");
  if (n_bins < 2) throw std::invalid_argument("n_bins must be >= 2");
  if (photon_cap != 1 && photon_cap != 2) throw std::invalid_argument("photon_cap must be 1 or 2");
  if (!(wigner_grid.step > 0.0) || !(wigner_grid.half_width > wigner_grid.step)) {
    throw std::invalid_argument("grid_step must be > 0 and smaller than grid_half_width");
  }
}

namespace {

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("bad numeric value for " + std::string(key) + ": '" +
                                std::string(value) + "'");
  }
  return out;
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("bad integer value for " + std::string(key) + ": '" +
                                std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void apply_setting(GateConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "gamma_tau") {
    cfg.gamma = to_double(key, value) / cfg.tau;
  } else if (key == "theta_over_pi") {
    cfg.theta = to_double(key, value) * std::numbers::pi;
  } else if (key == "n_bins") {
    cfg.n_bins = to_int(key, value);
  } else if (key == "photon_cap") {
    cfg.photon_cap = to_int(key, value);
  } else if (key == "grid_half_width") {
    cfg.wigner_grid.half_width = to_double(key, value);
  } else if (key == "grid_step") {
    cfg.wigner_grid.step = to_double(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto sep = view.find_first_of("=:");
    if (sep == std::string_view::npos) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    out[std::string(trim(view.substr(0, sep)))] = std::string(trim(view.substr(sep + 1)));
  }
  return out;
}

GateConfig load_config(const std::filesystem::path& path, GateConfig base) {
  for (const auto& [key, value] : read_key_values(path)) apply_setting(base, key, value);
  base.validate();
  return base;
}

}  // namespace anatomy
