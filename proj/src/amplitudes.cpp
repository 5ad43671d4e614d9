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

#include "anatomy/amplitudes.hpp"

#include <string>

namespace anatomy {

double eval_f0(Outcome eps, double t, const GateConfig& cfg) {
  return eval_f0<double>(eps, t, cfg.omega(), cfg.gamma);
}

double eval_f1(Outcome eps, double tau, double t, const GateConfig& cfg) {
  if (t < 0.0 || t > tau) throw std::invalid_argument("eval_f1: t outside [0, tau]");
  return std::sqrt(cfg.gamma) * eval_f0(eps, tau - t, cfg) * eval_f0(Outcome::e, t, cfg);
}

double eval_f2(Outcome eps, double tau, double t1, double t2, const GateConfig& cfg) {
  if (!(t1 < t2)) {
    throw std::invalid_argument("eval_f2: arguments must be time ordered, got t1 = " +
                                std::to_string(t1) + ", t2 = " + std::to_string(t2));
  }
  if (t1 < 0.0 || t2 > tau) throw std::invalid_argument("eval_f2: times outside [0, tau]");
  return cfg.gamma * eval_f0(eps, tau - t2, cfg) * eval_f0(Outcome::e, t2 - t1, cfg) *
         eval_f0(Outcome::e, t1, cfg);
}

WaveAmplitudes::WaveAmplitudes(const GateConfig& cfg, int photon_cap)
    : cfg_(cfg), photon_cap_(photon_cap) {
  cfg_.validate();
  if (photon_cap != 1 && photon_cap != 2) {
    throw std::invalid_argument("analytic amplitudes support photon_cap 1 or 2");
  }
  const int n = cfg_.n_bins;
  const double h = cfg_.dt();
  const double tau = cfg_.tau;

  head_.resize(n);
  gap_.resize(n);
  for (int i = 0; i < n; ++i) {
    head_[i] = eval_f0(Outcome::e, bin_time(i), cfg_);
    gap_[i] = eval_f0(Outcome::e, i * h, cfg_);
  }
  const double diag_gap = eval_f0(Outcome::e, h / 3.0, cfg_);

  for (Outcome eps : kOutcomes) {
    Sector& s = sectors_[index(eps)];
    s.f0 = eval_f0(eps, tau, cfg_);
    s.tail.resize(n);
    s.unit_f2_diag.resize(n);
    for (int j = 0; j < n; ++j) {
      s.tail[j] = eval_f0(eps, tau - bin_time(j), cfg_);
      const double t_lo = j * h + h / 3.0;
      const double t_hi = j * h + 2.0 * h / 3.0;
      s.unit_f2_diag[j] =
          eval_f0(eps, tau - t_hi, cfg_) * diag_gap * eval_f0(Outcome::e, t_lo, cfg_);
    }
    s.unit_f1 = s.tail.cwiseProduct(head_);

    s.p0 = s.f0 * s.f0;
    s.p1 = cfg_.gamma * h * s.unit_f1.squaredNorm();
    s.P = s.p0 + s.p1;
    if (photon_cap_ >= 2) {
      s.p2 = cfg_.gamma * cfg_.gamma * pair_integrals(eps).square;
      s.P += s.p2;
    }
  }
}

double WaveAmplitudes::p(Outcome eps, int j) const {
  const Sector& s = sector(eps);
  switch (j) {
    case 0: return s.p0;
    case 1: return s.p1;
    case 2: return s.p2;
    default: throw std::invalid_argument("p: photon number must be 0, 1 or 2");
  }
}

WaveAmplitudes::PairIntegrals WaveAmplitudes::pair_integrals(Outcome eps) const {
  const Sector& s = sector(eps);
  const int n = cfg_.n_bins;
  const double h = cfg_.dt();
  const double* head = head_.data();
  const double* gap = gap_.data();
  const double* g1 = s.unit_f1.data();

  PairIntegrals out;
  for (int j = 1; j < n; ++j) {
    double row_sum = 0.0, row_sq = 0.0, row_cross = 0.0;
    for (int i = 0; i < j; ++i) {
      const double v = gap[j - i] * head[i];
      row_sum += v;
      row_sq += v * v;
      row_cross += v * g1[i];
    }
    const double a = s.tail[j];
    out.sum += a * row_sum;
    out.square += a * a * row_sq;
    out.cross += a * (row_cross + g1[j] * row_sum);
  }
  // Diagonal cells cover half a square each.
  for (int i = 0; i < n; ++i) {
    const double d = s.unit_f2_diag[i];
    out.sum += 0.5 * d;
    out.square += 0.5 * d * d;
    out.cross += d * g1[i];
  }
  out.sum *= h * h;
  out.square *= h * h;
  out.cross *= h * h;
  return out;
}

WaveAmplitudes::PairMarginals WaveAmplitudes::pair_marginals(Outcome eps) const {
  const Sector& s = sector(eps);
  const int n = cfg_.n_bins;
  const double h = cfg_.dt();
  PairMarginals out{VectorXr::Zero(n), VectorXr::Zero(n)};
  for (int j = 1; j < n; ++j) {
    const double a = s.tail[j];
    for (int i = 0; i < j; ++i) {
      const double v = a * gap_[j - i] * head_[i];
      out.square[i] += v * v;
      out.square[j] += v * v;
      out.cross[i] += v * s.unit_f1[j];
      out.cross[j] += v * s.unit_f1[i];
    }
  }
  out.square *= h;
  out.cross *= h;
  return out;
}

WaveAmplitudes emission_probabilities(const GateConfig& cfg) {
  return WaveAmplitudes(cfg, cfg.photon_cap);
}

}  // namespace anatomy
