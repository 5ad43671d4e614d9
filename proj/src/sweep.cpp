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

#include "anatomy/sweep.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "anatomy/collision.hpp"
#include "anatomy/husimi.hpp"
#include "anatomy/wigner.hpp"

namespace anatomy {

std::vector<double> sweep_angles(int points) {
  if (points < 2) throw std::invalid_argument("sweep needs at least 2 angles");
  std::vector<double> out(points);
  for (int k = 0; k < points; ++k) out[k] = static_cast<double>(k + 1) / points;
  return out;
}

SweepRow evaluate_angle(const GateConfig& cfg) {
  SweepRow row;
  row.theta_over_pi = cfg.theta_over_pi();
  const WeakTrajectory traj = compute_trajectory(cfg);
  const WaveAmplitudes amps(cfg, 2);
  for (Outcome eps : kOutcomes) {
    const int k = index(eps);
    row.P[k] = traj.P[k];
    row.dN[k] = delta_n_exact(traj, eps);
    const SingleModeState state = build_zeta(amps, eps);
    row.dN_omega0[k] = delta_n_omega0(state);
    row.negativity[k] = negativity(wigner_eval(state, cfg.wigner_grid));
  }
  return row;
}

namespace {

void add_truncation(SweepRow& row, const GateConfig& cfg) {
  const WaveAmplitudes amps(cfg, 2);
  GateConfig cap1 = cfg;
  cap1.photon_cap = 1;
  GateConfig cap2 = cfg;
  cap2.photon_cap = 2;
  std::array<double, 2> t1{}, t2{};
  for (Outcome eps : kOutcomes) {
    t1[index(eps)] = delta_n_truncated(amps, cap1, eps).value;
    t2[index(eps)] = delta_n_truncated(amps, cap2, eps).value;
  }
  row.dN_trunc1 = t1;
  row.dN_trunc2 = t2;
}

}  // namespace

std::vector<SweepRow> run_sweep(const GateConfig& base, const SweepOptions& options) {
  const std::vector<double> angles = sweep_angles(options.points);
  std::vector<SweepRow> rows(angles.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < angles.size(); i = next++) {
      try {
        GateConfig cfg = base;
        cfg.theta = angles[i] * std::numbers::pi;
        rows[i] = evaluate_angle(cfg);
        if (options.compare_truncation) add_truncation(rows[i], cfg);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(angles.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace anatomy
