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

#include "anatomy/wigner.hpp"

#include <cmath>
#include <numbers>

namespace anatomy {

ModeOverlaps mode_overlaps(const WaveAmplitudes& amps, Outcome eps) {
  const GateConfig& cfg = amps.config();
  if (cfg.gamma == 0.0) return {};
  const auto& s = amps.sector(eps);
  ModeOverlaps out;
  out.f1t = std::sqrt(cfg.gamma / cfg.tau) * amps.dt() * s.unit_f1.sum();
  if (amps.photon_cap() >= 2) out.f2t = cfg.gamma / cfg.tau * amps.pair_integrals(eps).sum;
  return out;
}

SingleModeState SingleModeState::from_matrix(const Matrix3c& zeta, Complex offset) {
  SingleModeState state;
  state.zeta = zeta;
  state.offset = offset;
  state.offset_defined = true;
  return state;
}

SingleModeState build_zeta(const WaveAmplitudes& amps, Outcome eps) {
  if (amps.photon_cap() != 2) throw std::invalid_argument("build_zeta needs photon_cap = 2 amplitudes");
  const GateConfig& cfg = amps.config();
  SingleModeState state;
  state.eps = eps;
  state.P = amps.P(eps);
  if (state.P < kMinPostSelection) throw PostSelectionError(eps, state.P);
  state.f0 = amps.f0(eps);
  state.overlaps = mode_overlaps(amps, eps);
  state.offset_defined = cfg.gamma > 0.0;
  state.offset = state.offset_defined ? Complex(cfg.alpha(), 0.0) : Complex(0.0, 0.0);

  const double f0 = state.f0;
  const double a = state.overlaps.f1t;
  const double b = state.overlaps.f2t;
  const double r2 = std::sqrt(2.0);
  Matrix3c& z = state.zeta;
  z(0, 0) = state.P - a * a - 2.0 * b * b;
  z(1, 1) = a * a;
  z(2, 2) = 2.0 * b * b;
  z(1, 0) = z(0, 1) = -f0 * a;
  z(2, 0) = z(0, 2) = r2 * f0 * b;
  z(2, 1) = z(1, 2) = -r2 * a * b;
  z /= state.P;

  const Eigen::SelfAdjointEigenSolver<Matrix3c> solver(z, Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -1e-6) {
    throw std::runtime_error("single-mode state inconsistent with truncation: eigenvalue " +
                             std::to_string(lowest));
  }
  return state;
}

double wigner_closed_form(const Matrix3c& zeta, Complex beta) {
  const double r2 = std::norm(beta);
  const double x = 4.0 * r2;
  const double L1 = 1.0 - x;
  const double L2 = 1.0 - 2.0 * x + 0.5 * x * x;
  const Complex bc = std::conj(beta);
  const double sqrt2 = std::numbers::sqrt2;
  const double poly = zeta(0, 0).real() - zeta(1, 1).real() * L1 + zeta(2, 2).real() * L2 +
                      4.0 * (zeta(1, 0) * bc).real() -
                      2.0 * sqrt2 * (zeta(2, 1) * bc).real() * (2.0 - x) +
                      4.0 * sqrt2 * (zeta(2, 0) * bc * bc).real();
  return 2.0 / std::numbers::pi * std::exp(-2.0 * r2) * poly;
}

double wigner_fock_kernel(const Eigen::MatrixXcd& rho, Complex beta) {
  const double r2 = std::norm(beta);
  const double x = 4.0 * r2;
  const Complex two_bc = 2.0 * std::conj(beta);
  const int dim = static_cast<int>(rho.rows());
  Complex total = 0.0;
  for (int n = 0; n < dim; ++n) {
    for (int d = 0; n + d < dim; ++d) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      const double norm = std::sqrt(std::tgamma(n + 1.0) / std::tgamma(n + d + 1.0));
      const Complex kernel = sign * norm * std::pow(two_bc, d) *
                             std::assoc_laguerre(static_cast<unsigned>(n), static_cast<unsigned>(d), x);
      const Complex term = rho(n + d, n) * kernel;
      total += d == 0 ? term : 2.0 * Complex(term.real(), 0.0);
    }
  }
  return 2.0 / std::numbers::pi * std::exp(-2.0 * r2) * total.real();
}

WignerGrid wigner_eval(const SingleModeState& state, const GridSpec& grid) {
  WignerGrid out;
  out.center = state.offset;
  out.grid = grid;
  const int m = grid.points_per_axis();
  out.values.resize(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i)
      out.values(i, j) = wigner_closed_form(state.zeta, Complex(grid.coordinate(i), grid.coordinate(j)));

  const double area = out.cell_area();
  out.integral = out.values.sum() * area;
  out.abs_integral = out.values.cwiseAbs().sum() * area;
  const int k = m - 1;
  double ring = out.values.row(0).cwiseAbs().sum() + out.values.row(k).cwiseAbs().sum() +
                out.values.col(0).cwiseAbs().sum() + out.values.col(k).cwiseAbs().sum();
  ring -= std::abs(out.values(0, 0)) + std::abs(out.values(0, k)) + std::abs(out.values(k, 0)) +
          std::abs(out.values(k, k));
  out.boundary_mass = ring * area;
  out.truncated = out.boundary_mass > 1e-8;
  return out;
}

double negativity(const WignerGrid& grid) { return std::max(0.0, grid.abs_integral - 1.0); }

namespace {

void require_offset(const SingleModeState& state) {
  if (!state.offset_defined) {
    throw std::domain_error("coherent amplitude undefined for gamma = 0 (window = tau)");
  }
}

}  // namespace

double delta_n_omega0(const SingleModeState& state) {
  require_offset(state);
  const Matrix3c& z = state.zeta;
  const double number = z(1, 1).real() + 2.0 * z(2, 2).real();
  const Complex mean_a = z(1, 0) + std::numbers::sqrt2 * z(2, 1);
  return number + 2.0 * (std::conj(state.offset) * mean_a).real();
}

double delta_n_omega0_wigner(const SingleModeState& state, const WignerGrid& grid) {
  require_offset(state);
  const int m = static_cast<int>(grid.values.rows());
  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const Complex mu = grid.center + Complex(grid.grid.coordinate(i), grid.grid.coordinate(j));
      total += (std::norm(mu) - 0.5) * grid.values(i, j);
    }
  }
  return total * grid.cell_area() - std::norm(state.offset);
}

}  // namespace anatomy
