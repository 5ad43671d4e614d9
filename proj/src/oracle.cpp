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

#include "anatomy/oracle.hpp"

#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

namespace anatomy {

CapOverflowError::CapOverflowError(double leaked)
    : std::runtime_error("photon cap overflow: leaked norm " + std::to_string(leaked)),
      leaked_(leaked) {}

double SectorState::norm() const {
  double total = vac.squaredNorm();
  for (const auto& v : single) total += v.squaredNorm();
  for (const auto& v : pairs) total += v.squaredNorm();
  return total;
}

Complex SectorState::amplitude(Outcome eps, int n, int m) const {
  if (n > m) std::swap(n, m);
  if (n < 0 || m >= n_bins()) throw std::out_of_range("bin index outside [0, N_o)");
  if (pairs.empty()) return 0.0;
  return pairs[pair_index(n, m)][index(eps)];
}

namespace {

// Fresh-bin columns of the one-bin propagator for `spectators` photons already
// emitted: maps[k] takes the qubit state to the qubit state with k photons
// left in the current bin. The last entry is the first level above the cap.
std::vector<Matrix2c> bin_maps(const GateConfig& cfg, int spectators) {
  const int levels = cfg.photon_cap - spectators + 2;
  const int dim = 2 * levels;
  const double drive = 0.5 * cfg.omega() * cfg.dt();
  const double exchange = std::sqrt(cfg.gamma * cfg.dt());
  auto at = [levels](int qubit, int k) { return qubit * levels + k; };
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < levels; ++k) {
    gen(at(1, k), at(0, k)) += drive;
    gen(at(0, k), at(1, k)) -= drive;
    if (k + 1 < levels) {
      const double amp = exchange * std::sqrt(k + 1.0);
      gen(at(1, k), at(0, k + 1)) += amp;  // sigma^+ b
      gen(at(0, k + 1), at(1, k)) -= amp;  // -sigma b^+
    }
  }
  const Eigen::MatrixXd step = gen.exp();
  std::vector<Matrix2c> maps(levels);
  for (int k = 0; k < levels; ++k)
    for (int out = 0; out < 2; ++out)
      for (int in = 0; in < 2; ++in) maps[k](out, in) = step(at(out, k), at(in, 0));
  return maps;
}

}  // namespace

SectorState oracle_propagate(const GateConfig& cfg) {
  // A single collision is a valid oracle run, unlike the analytic grids.
  GateConfig checked = cfg;
  checked.n_bins = std::max(cfg.n_bins, 2);
  checked.validate();
  if (cfg.n_bins < 1 || cfg.n_bins > kOracleMaxBins) {
    throw std::invalid_argument("oracle bin count must lie in [1, " + std::to_string(kOracleMaxBins) + "]");
  }
  const int n_bins = cfg.n_bins;
  const int cap = cfg.photon_cap;
  const auto m0 = bin_maps(cfg, 0);
  const auto m1 = bin_maps(cfg, 1);

  SectorState st;
  st.cfg = cfg;
  st.photon_cap = cap;
  st.vac << 1.0, 0.0;
  st.single.assign(n_bins, Vector2c::Zero());
  if (cap == 2) st.pairs.assign(SectorState::pair_index(0, n_bins), Vector2c::Zero());

  double leak = 0.0;
  for (int n = 0; n < n_bins; ++n) {
    const Vector2c vac = st.vac;
    leak += (m0[cap + 1] * vac).squaredNorm();
    for (int m = 0; m < n; ++m) {
      Vector2c& s = st.single[m];
      leak += (m1[cap] * s).squaredNorm();
      if (cap == 2) st.pairs[SectorState::pair_index(m, n)] = m1[1] * s;
      s = m1[0] * s;
    }
    st.single[n] = m0[1] * vac;
    if (cap == 2) st.pairs[SectorState::pair_index(n, n)] = m0[2] * vac;
    st.vac = m0[0] * vac;
  }

  if (cap == 2) {
    // Pairs completed at step m idle through the remaining N - 1 - m bins.
    const Matrix2c idle = bin_maps(cfg, 2)[0];
    std::vector<Matrix2c> power(n_bins);
    power[0] = Matrix2c::Identity();
    for (int k = 1; k < n_bins; ++k) power[k] = idle * power[k - 1];
    for (int m = 0; m < n_bins; ++m) {
      const Matrix2c& p = power[n_bins - 1 - m];
      for (int n = 0; n <= m; ++n) {
        Vector2c& v = st.pairs[SectorState::pair_index(n, m)];
        const double before = v.squaredNorm();
        v = p * v;
        leak += before - v.squaredNorm();
      }
    }
  }

  st.leak = leak;
  st.unitarity_error = std::abs(st.norm() + leak - 1.0);
  if (leak > kOracleMaxLeak) throw CapOverflowError(leak);
  return st;
}

double oracle_f2(const SectorState& state, Outcome eps, int n, int m) {
  if (!(n < m)) throw std::invalid_argument("oracle_f2: bins must be ordered n < m");
  return state.amplitude(eps, n, m).real() / state.cfg.dt();
}

OracleExtract oracle_extract(const SectorState& st, Outcome eps) {
  const int q = index(eps);
  const int n_bins = st.n_bins();
  const GateConfig& cfg = st.cfg;
  const double h = cfg.dt();
  const bool pairs = !st.pairs.empty();

  OracleExtract out;
  out.eps = eps;
  const Complex c0 = st.vac[q];
  Eigen::VectorXcd c(n_bins);
  for (int n = 0; n < n_bins; ++n) c[n] = st.single[n][q];
  out.weight[0] = std::norm(c0);
  out.weight[1] = c.squaredNorm();
  if (pairs) {
    for (const auto& v : st.pairs) out.weight[2] += std::norm(v[q]);
  }
  out.P = out.weight[0] + out.weight[1] + out.weight[2];
  if (out.P < kMinPostSelection) throw PostSelectionError(eps, out.P);
  out.f0 = c0.real();
  out.f1 = -c.real() / std::sqrt(h);

  // P <b_n> for every bin.
  Eigen::VectorXcd mean_b = std::conj(c0) * c;
  // Symmetric pair matrix S with state sum_{nm} S_nm b_n^+ b_m^+ |0>; only S e is needed.
  const double u = std::sqrt(h / cfg.tau);
  Eigen::VectorXcd Se = Eigen::VectorXcd::Zero(n_bins);
  if (pairs) {
    for (int m = 0; m < n_bins; ++m) {
      for (int n = 0; n < m; ++n) {
        const Complex a = st.pairs[SectorState::pair_index(n, m)][q];
        mean_b[n] += std::conj(c[m]) * a;
        mean_b[m] += std::conj(c[n]) * a;
        Se[n] += 0.5 * a * u;
        Se[m] += 0.5 * a * u;
      }
      const Complex a = st.pairs[SectorState::pair_index(m, m)][q];
      mean_b[m] += std::sqrt(2.0) * std::conj(c[m]) * a;
      Se[m] += a / std::sqrt(2.0) * u;
    }
  }

  double interference = 0.0;
  if (cfg.gamma > 0.0) {
    const double alpha_bin = cfg.alpha_bin();
    interference = 2.0 * alpha_bin * mean_b.real().sum();
  }
  out.delta_n = (out.weight[1] + 2.0 * out.weight[2] + interference) / out.P;

  const Complex s1 = u * c.sum();
  const Eigen::VectorXcd r = c - Eigen::VectorXcd::Constant(n_bins, u * s1);
  const Complex qq = u * Se.sum();
  const Eigen::VectorXcd v = Se - Eigen::VectorXcd::Constant(n_bins, u * qq);
  const double sqrt2 = std::sqrt(2.0);
  Matrix3c& z = out.zeta;
  z(1, 1) = std::norm(s1) + 4.0 * v.squaredNorm();
  z(2, 2) = 2.0 * std::norm(qq);
  z(0, 0) = out.P - z(1, 1) - z(2, 2);
  z(1, 0) = std::conj(c0) * s1 + 2.0 * r.dot(v);
  z(2, 0) = std::conj(c0) * sqrt2 * qq;
  z(2, 1) = std::conj(s1) * sqrt2 * qq;
  z(0, 1) = std::conj(z(1, 0));
  z(0, 2) = std::conj(z(2, 0));
  z(1, 2) = std::conj(z(2, 1));
  z /= out.P;
  return out;
}

}  // namespace anatomy
