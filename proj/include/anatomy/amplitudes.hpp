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
#include <vector>

#include "anatomy/config.hpp"
#include "anatomy/types.hpp"

namespace anatomy {

namespace detail {

/// cos(sqrt(x)) and sin(sqrt(x)) / sqrt(x), continued analytically to x < 0.
template <typename Scalar>
void cos_sinc_sqrt(Scalar x, Scalar& c, Scalar& s) {
  using std::abs;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  if (abs(x) < Scalar(1e-2)) {
    // Taylor series; 10 terms reach double precision for |x| < 1e-2.
    Scalar term_c(1), term_s(1);
    c = Scalar(0);
    s = Scalar(0);
    for (int k = 0; k < 10; ++k) {
      c += term_c;
      s += term_s;
      term_c *= -x / Scalar((2 * k + 1) * (2 * k + 2));
      term_s *= -x / Scalar((2 * k + 2) * (2 * k + 3));
    }
  } else if (x > 0) {
    const Scalar r = sqrt(x);
    c = cos(r);
    s = sin(r) / r;
  } else {
    const Scalar r = sqrt(-x);
    c = cosh(r);
    s = sinh(r) / r;
  }
}

}  // namespace detail

/// No-emission amplitude f0_eps(t) of reaching |eps> from |g> in time t
/// under the drive omega and decay rate gamma. Real in the rotating frame.
///
/// Below the branch point omega < gamma / 2 the trigonometric form turns
/// hyperbolic; both are evaluated through cos_sinc_sqrt so the result is
/// smooth in omega.
template <typename Scalar>
Scalar eval_f0(Outcome eps, Scalar t, Scalar omega, Scalar gamma) {
  using std::exp;
  const Scalar half_t = t / Scalar(2);
  const Scalar shifted = omega * omega - gamma * gamma / Scalar(4);  // Omega'^2
  Scalar c, sinc;
  detail::cos_sinc_sqrt(shifted * half_t * half_t, c, sinc);
  const Scalar s_over = half_t * sinc;  // sin(Omega' t / 2) / Omega'
  const Scalar envelope = exp(-gamma * t / Scalar(4));
  if (eps == Outcome::g) return envelope * (c + s_over * gamma / Scalar(2));
  return envelope * s_over * omega;
}

double eval_f0(Outcome eps, double t, const GateConfig& cfg);

/// One-photon amplitude f1_eps(tau, t) for emission at time t.
double eval_f1(Outcome eps, double tau, double t, const GateConfig& cfg);

/// Two-photon amplitude f2_eps(tau, t1, t2), defined on the ordered wedge
/// t1 < t2 only. Throws std::invalid_argument otherwise.
double eval_f2(Outcome eps, double tau, double t1, double t2, const GateConfig& cfg);

/// Emission amplitudes sampled on the collision grid, one set per outcome.
///
/// Amplitudes are stored divided by their natural power of sqrt(gamma)
/// (f1 = sqrt(gamma) * unit_f1, f2 = gamma * unit_f2) so that products with
/// the coherent amplitude remain finite at gamma = 0. Bin n is sampled at its
/// centre t_n + dt / 2; f2 on the diagonal cell (n, n) is sampled at the
/// centroid of the lower triangle.
class WaveAmplitudes {
 public:
  struct Sector {
    double f0 = 0.0;   ///< f0_eps(tau)
    VectorXr unit_f1;  ///< f1 / sqrt(gamma) at bin centres
    VectorXr tail;     ///< f0_eps(tau - t_m) at bin centres
    VectorXr unit_f2_diag;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;  ///< unnormalised emission weights
    double P = 0.0;                       ///< sum of the retained p_j
  };

  WaveAmplitudes(const GateConfig& cfg, int photon_cap);

  const GateConfig& config() const { return cfg_; }
  int photon_cap() const { return photon_cap_; }
  int n_bins() const { return cfg_.n_bins; }
  double dt() const { return cfg_.dt(); }
  double bin_time(int n) const { return (n + 0.5) * dt(); }

  const Sector& sector(Outcome eps) const { return sectors_[index(eps)]; }
  double f0(Outcome eps) const { return sector(eps).f0; }
  double f1(Outcome eps, int n) const { return std::sqrt(cfg_.gamma) * sector(eps).unit_f1[n]; }
  /// f2 / gamma for bins i <= j.
  double unit_f2(Outcome eps, int i, int j) const {
    if (i == j) return sector(eps).unit_f2_diag[i];
    return sector(eps).tail[j] * gap_[j - i] * head_[i];
  }
  double f2(Outcome eps, int i, int j) const { return cfg_.gamma * unit_f2(eps, i, j); }
  double P(Outcome eps) const { return sector(eps).P; }
  double p(Outcome eps, int j) const;

  /// Ordered-simplex integrals of the unit two-photon amplitude:
  ///   sum:   int dt int dt' g2(t, t')
  ///   cross: int dt int dt' g2(t, t') (g1(t) + g1(t'))
  struct PairIntegrals {
    double sum = 0.0;
    double square = 0.0;
    double cross = 0.0;
  };
  PairIntegrals pair_integrals(Outcome eps) const;

  /// Per-bin marginals of the two-photon amplitude, summed over the partner
  /// bin m != n: dt * sum g2^2 and dt * sum g2 * g1(m), unit normalised.
  struct PairMarginals {
    VectorXr square;
    VectorXr cross;
  };
  PairMarginals pair_marginals(Outcome eps) const;

 private:
  GateConfig cfg_;
  int photon_cap_;
  VectorXr head_;  ///< f0_e(t_i) at bin centres
  VectorXr gap_;   ///< f0_e(k dt), k = 0..N-1
  std::array<Sector, 2> sectors_;
};

/// Evaluates every amplitude and emission weight for cfg.photon_cap.
WaveAmplitudes emission_probabilities(const GateConfig& cfg);

}  // namespace anatomy
