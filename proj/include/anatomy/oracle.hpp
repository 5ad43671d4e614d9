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

#include <vector>

#include "anatomy/config.hpp"
#include "anatomy/types.hpp"

namespace anatomy {

/// Largest bin count accepted by the brute-force oracle.
inline constexpr int kOracleMaxBins = 2000;
/// Norm allowed to leak above the photon cap before a run is rejected.
inline constexpr double kOracleMaxLeak = 1e-3;

class CapOverflowError : public std::runtime_error {
 public:
  explicit CapOverflowError(double leaked);
  double leaked() const { return leaked_; }

 private:
  double leaked_;
};

/// Joint qubit-field state in the displaced frame after the last collision.
///
/// The field holds at most photon_cap photons spread over the n_bins time
/// bins. Each field configuration (sorted bin tuple) carries a qubit
/// 2-vector over {g, e}:
///   vac            no photon
///   single[n]      one photon in bin n
///   pairs[idx]     two photons in bins n <= m, idx = m (m + 1) / 2 + n,
///                  normalised Fock states (|2_n> on the diagonal)
struct SectorState {
  GateConfig cfg;
  int photon_cap = 2;
  Vector2c vac = Vector2c::Zero();
  std::vector<Vector2c> single;
  std::vector<Vector2c> pairs;
  double leak = 0.0;             ///< norm carried out of the retained sector
  double unitarity_error = 0.0;  ///< |norm + leak - 1|

  int n_bins() const { return cfg.n_bins; }
  static std::size_t pair_index(int n, int m) {
    return static_cast<std::size_t>(m) * (m + 1) / 2 + n;
  }
  double norm() const;

  Complex amplitude(Outcome eps) const { return vac[index(eps)]; }
  Complex amplitude(Outcome eps, int n) const { return single.at(n)[index(eps)]; }
  /// Bins in either order.
  Complex amplitude(Outcome eps, int n, int m) const;
};

/// Runs the collision sequence with the exact per-bin propagator of
///   dt (omega / 2)(sigma^+ - sigma) + sqrt(gamma dt)(sigma^+ b_n - sigma b_n^+)
/// on the retained sector. Uses cfg.n_bins as N_o and cfg.photon_cap as J_o.
/// Throws std::invalid_argument outside 1 <= N_o <= 2000, J_o in {1, 2} and
/// CapOverflowError when more than 1e-3 of norm leaks above J_o.
SectorState oracle_propagate(const GateConfig& cfg);

struct OracleExtract {
  Outcome eps = Outcome::g;
  double P = 0.0;
  double f0 = 0.0;
  VectorXr f1;                   ///< -amplitude / sqrt(dt) per bin
  std::array<double, 3> weight{};  ///< unnormalised j-photon norms
  double delta_n = 0.0;
  Matrix3c zeta = Matrix3c::Zero();
};

/// Post-selected quantities of the eps block. The photon-number change adds
/// the interference of every bin with the coherent amplitude
/// alpha_n = alpha sqrt(dt / tau); zeta is the partial trace onto the
/// flat-top mode sqrt(dt / tau) sum_n b_n. Throws PostSelectionError when
/// P_eps < 1e-12.
OracleExtract oracle_extract(const SectorState& state, Outcome eps);

/// Two-photon amplitude f2 for bins n < m, amplitude / dt.
double oracle_f2(const SectorState& state, Outcome eps, int n, int m);

}  // namespace anatomy
