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

#include "anatomy/husimi.hpp"

#include <numbers>

namespace anatomy {

std::string_view name(HusimiRoute route) {
  return route == HusimiRoute::effect ? "effect" : "wavefunction";
}

double HusimiSlice::value_at(Complex s) const {
  const Complex z = s - center;
  const double r2 = std::norm(z);
  return std::exp(-r2) / std::numbers::pi *
         (A + B * (r2 - 1.0) - 2.0 * (std::conj(z) * C).real());
}

double HusimiSlice::integral() const { return values.sum() * cell_area(); }

double HusimiSlice::boundary_mass() const {
  const Eigen::Index k = values.rows() - 1;
  double ring = values.row(0).cwiseAbs().sum() + values.row(k).cwiseAbs().sum() +
                values.col(0).cwiseAbs().sum() + values.col(k).cwiseAbs().sum();
  ring -= std::abs(values(0, 0)) + std::abs(values(0, k)) + std::abs(values(k, 0)) +
          std::abs(values(k, k));
  return ring * cell_area();
}

void sample(HusimiSlice& slice, const GridSpec& grid) {
  slice.grid = grid;
  const int m = grid.points_per_axis();
  slice.values.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      slice.values(i, j) = slice.value_at(slice.center + Complex(grid.coordinate(i), grid.coordinate(j)));
}

namespace {

Complex slice_center(const GateConfig& cfg) {
  return cfg.gamma > 0.0 ? Complex(cfg.alpha_bin(), 0.0) : Complex(0.0, 0.0);
}

void require_bin(const GateConfig& cfg, int n) {
  if (n < 0 || n >= cfg.n_bins) throw std::out_of_range("husimi: bin index outside [0, N)");
}

double factorial(int k) { return std::tgamma(k + 1.0); }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// int d^2z conj(z)^a z^b Q(z) in the displaced variable.
Complex displaced_moment(const HusimiSlice& q, int a, int b) {
  Complex out = 0.0;
  if (a == b) out += q.A * factorial(a) + q.B * (factorial(a + 1) - factorial(a));
  if (a + 1 == b) out -= q.C * factorial(a + 1);
  if (a == b + 1) out -= std::conj(q.C) * factorial(a);
  return out;
}

}  // namespace

HusimiSlice husimi_effect_route(const WeakTrajectory& traj, Outcome eps, int n, const GridSpec& grid) {
  const GateConfig& cfg = traj.cfg;
  require_bin(cfg, n);
  HusimiSlice q;
  q.n = n;
  q.eps = eps;
  q.route = HusimiRoute::effect;
  q.center = slice_center(cfg);
  q.dt = cfg.dt();
  q.A = 1.0;
  q.B = cfg.gamma * q.dt * weak_jump(traj, eps, n);
  q.C = std::sqrt(cfg.gamma * q.dt) * weak_sigma(traj, eps, n);
  sample(q, grid);
  return q;
}

HusimiSlice husimi_wavefunction_route(const WaveAmplitudes& amps, Outcome eps, int n, const GridSpec& grid) {
  const GateConfig& cfg = amps.config();
  require_bin(cfg, n);
  if (amps.photon_cap() != 2) {
    throw std::invalid_argument("wavefunction-route Husimi needs photon_cap = 2 amplitudes");
  }
  const double P = amps.P(eps);
  if (P < kMinPostSelection) throw PostSelectionError(eps, P);
  const auto& s = amps.sector(eps);
  const auto marg = amps.pair_marginals(eps);
  const double g = cfg.gamma;

  HusimiSlice q;
  q.n = n;
  q.eps = eps;
  q.route = HusimiRoute::wavefunction;
  q.center = slice_center(cfg);
  q.dt = cfg.dt();
  q.A = 1.0;
  const double g1 = s.unit_f1[n];
  q.B = q.dt * (g * g1 * g1 + g * g * marg.square[n]) / P;
  q.C = std::sqrt(q.dt) * (std::sqrt(g) * g1 * s.f0 + g * std::sqrt(g) * marg.cross[n]) / P;
  sample(q, grid);
  return q;
}

Complex moment(const HusimiSlice& slice, int m_order, int l_order) {
  if (m_order < 0 || l_order < 0) throw std::invalid_argument("moment orders must be >= 0");
  const Complex a = slice.center;
  const Complex ac = std::conj(a);
  Complex out = 0.0;
  for (int i = 0; i <= m_order; ++i) {
    for (int j = 0; j <= l_order; ++j) {
      const Complex w = binomial(m_order, i) * binomial(l_order, j) *
                        std::pow(ac, m_order - i) * std::pow(a, l_order - j);
      out += w * displaced_moment(slice, i, j);
    }
  }
  return out;
}

Complex moment_numeric(const HusimiSlice& slice, int m_order, int l_order) {
  const int m = static_cast<int>(slice.values.rows());
  Complex out = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const Complex s = slice.center + Complex(slice.point(i), slice.point(j));
      out += std::pow(std::conj(s), m_order) * std::pow(s, l_order) * slice.values(i, j);
    }
  }
  return out * slice.cell_area();
}

double intensity_weak_value(const HusimiSlice& slice) {
  if (slice.values.size() > 0) {
    const double mass = slice.boundary_mass();
    if (mass > 1e-8) throw GridTruncationError(mass);
  }
  return (moment(slice, 1, 1).real() - 1.0) / slice.dt;
}

double input_intensity(const GateConfig& cfg) {
  const double a = cfg.alpha_bin();
  return a * a / cfg.dt();
}

double delta_n_from_intensity(const WeakTrajectory& traj, Outcome eps) {
  const GateConfig& cfg = traj.cfg;
  const double h = cfg.dt();
  const double input = input_intensity(cfg);
  double total = 0.0;
  HusimiSlice q;
  q.center = slice_center(cfg);
  q.dt = h;
  for (int n = 0; n < cfg.n_bins; ++n) {
    q.B = cfg.gamma * h * weak_jump(traj, eps, n);
    q.C = std::sqrt(cfg.gamma * h) * weak_sigma(traj, eps, n);
    total += h * (intensity_weak_value(q) - input);
  }
  return total;
}

TruncatedDeltaN delta_n_truncated(const WaveAmplitudes& amps, const GateConfig& cfg, Outcome eps) {
  if (cfg.photon_cap != 1 && cfg.photon_cap != 2) {
    throw std::invalid_argument("delta_n_truncated: photon_cap must be 1 or 2");
  }
  if (cfg.photon_cap > amps.photon_cap()) {
    throw std::invalid_argument("delta_n_truncated: amplitudes were built with a lower photon cap");
  }
  if (cfg.gamma == 0.0) return {0.0, true};

  const auto& s = amps.sector(eps);
  const bool pairs = cfg.photon_cap == 2;
  const double P = s.p0 + s.p1 + (pairs ? s.p2 : 0.0);
  if (P < kMinPostSelection) throw PostSelectionError(eps, P);

  const double h = amps.dt();
  const double half_omega = 0.5 * cfg.omega();
  double numerator = s.p1 - 2.0 * half_omega * s.f0 * h * s.unit_f1.sum();
  if (pairs) {
    const auto pi = amps.pair_integrals(eps);
    numerator += 2.0 * s.p2 - 2.0 * half_omega * cfg.gamma * pi.cross;
  }
  return {numerator / P, false};
}

}  // namespace anatomy
