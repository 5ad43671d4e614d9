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

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>

#include "anatomy/collision.hpp"
#include "anatomy/husimi.hpp"
#include "anatomy/oracle.hpp"
#include "anatomy/output.hpp"
#include "anatomy/sweep.hpp"
#include "anatomy/validate.hpp"
#include "anatomy/wigner.hpp"

namespace fs = std::filesystem;
using namespace anatomy;

namespace {

constexpr int kExitPhysics = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::string config_path;
  double gamma_tau = 0.0;
  double theta_over_pi = 0.0;
  int n_bins = 0;
  int photon_cap = 0;
  double grid_half_width = 0.0;
  double grid_step = 0.0;
  int jobs = 1;
  std::string out_dir;
  std::vector<CLI::Option*> overrides;
};

GateConfig resolve_config(const GlobalFlags& flags, RunManifest& manifest) {
  GateConfig cfg = GateConfig::from_dimensionless(0.075, 0.93);
  if (!flags.config_path.empty()) {
    cfg = load_config(flags.config_path, cfg);
    manifest.inputs.emplace_back(flags.config_path, sha256_file(flags.config_path));
  }
  for (const CLI::Option* opt : flags.overrides) {
    if (opt->count() == 0) continue;
    std::string setting = opt->get_name();
    setting.erase(0, setting.find_first_not_of('-'));
    std::replace(setting.begin(), setting.end(), '-', '_');
    apply_setting(cfg, setting, opt->as<std::string>());
  }
  cfg.validate();
  return cfg;
}

fs::path resolve_out_dir(const GlobalFlags& flags) {
  fs::path dir = flags.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("ANATOMY_OUT_DIR");
    dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(".");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".anatomy_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw UsageError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
  return dir;
}

std::vector<double> column(int count, auto&& f) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = f(i);
  return out;
}

int cmd_trajectory(const GateConfig& cfg, RunManifest& manifest) {
  const WeakTrajectory traj = compute_trajectory(cfg);
  manifest.write("trajectory.csv", trajectory_csv(traj));
  manifest.write("trajectory_unconditional.csv", unconditional_csv(traj));

  const int rows = traj.n_bins() + 1;
  const auto t = column(rows, [&](int n) { return traj.time(n); });
  std::vector<Series> series{
      {"cum dN_g", t, column(rows, [&](int n) { return traj.cum_dN[0][n]; }), "#d62728"},
      {"cum dN_e", t, column(rows, [&](int n) { return traj.cum_dN[1][n]; }), "#1f77b4"},
      {"unconditional", t, column(rows, [&](int n) { return traj.cum_dN_unconditional[n]; }), "#7f7f7f"},
  };
  manifest.write("trajectory.svg", svg_line_plot("field excitation change", "t / tau", "dN(t)", series));

  for (Outcome eps : kOutcomes) {
    if (!traj.post_selectable(eps)) {
      std::cerr << "warning: P_" << name(eps) << " = " << traj.P[index(eps)]
                << " below post-selection threshold; weak values reported as nan\n";
      continue;
    }
    std::cout << "dN_" << name(eps) << " = " << format_number(delta_n_exact(traj, eps))
              << "  (P = " << format_number(traj.P[index(eps)]) << ")\n";
  }
  return 0;
}

int cmd_sweep(const GateConfig& cfg, const SweepOptions& options, RunManifest& manifest) {
  const std::vector<SweepRow> rows = run_sweep(cfg, options);
  manifest.write("sweep.csv", sweep_csv(rows));

  const int count = static_cast<int>(rows.size());
  const auto x = column(count, [&](int i) { return rows[i].theta_over_pi; });
  std::vector<Series> dn{
      {"dN_g", x, column(count, [&](int i) { return rows[i].dN[0]; }), "#d62728"},
      {"dN_e", x, column(count, [&](int i) { return rows[i].dN[1]; }), "#1f77b4"},
      {"dN_g(w0)", x, column(count, [&](int i) { return rows[i].dN_omega0[0]; }), "#ff9896"},
      {"dN_e(w0)", x, column(count, [&](int i) { return rows[i].dN_omega0[1]; }), "#aec7e8"},
  };
  if (options.compare_truncation) {
    dn.push_back({"dN_g 1 photon", x, column(count, [&](int i) { return (*rows[i].dN_trunc1)[0]; }), "#2ca02c"});
    dn.push_back({"dN_g 2 photons", x, column(count, [&](int i) { return (*rows[i].dN_trunc2)[0]; }), "#9467bd"});
  }
  manifest.write("sweep_dN.svg", svg_line_plot("post-selected field change", "theta / pi", "dN", dn));
  std::vector<Series> neg{
      {"N(W_g)", x, column(count, [&](int i) { return rows[i].negativity[0]; }), "#d62728"},
      {"N(W_e)", x, column(count, [&](int i) { return rows[i].negativity[1]; }), "#1f77b4"},
  };
  manifest.write("sweep_negativity.svg", svg_line_plot("Wigner negativity", "theta / pi", "N(W)", neg));
  std::cout << count << " angles written to sweep.csv\n";
  return 0;
}

std::vector<Outcome> selected_outcomes(const std::string& which) {
  if (which == "both") return {Outcome::g, Outcome::e};
  try {
    return {parse_outcome(which)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_wigner(const GateConfig& cfg, const std::string& which, RunManifest& manifest) {
  const WaveAmplitudes amps(cfg, 2);
  nlohmann::json summary = nlohmann::json::object();
  bool truncated = false;
  for (Outcome eps : selected_outcomes(which)) {
    const SingleModeState state = build_zeta(amps, eps);
    const WignerGrid grid = wigner_eval(state, cfg.wigner_grid);
    const std::string stem = "wigner_" + std::string(name(eps));
    manifest.write(stem + ".csv", wigner_csv(grid));
    const double lo = -cfg.wigner_grid.half_width, hi = cfg.wigner_grid.half_width;
    manifest.write(stem + ".svg",
                   svg_heatmap("W_" + std::string(name(eps)) + " around alpha", grid.values,
                               grid.center.real() + lo, grid.center.real() + hi, grid.center.imag() + lo,
                               grid.center.imag() + hi));
    const double neg = negativity(grid);
    summary[std::string(name(eps))] = {{"P", state.P},
                                        {"negativity", neg},
                                        {"min", grid.min_value()},
                                        {"integral", grid.integral},
                                        {"boundary_mass", grid.boundary_mass},
                                        {"truncated", grid.truncated}};
    truncated = truncated || grid.truncated;
    std::cout << "N(W_" << name(eps) << ") = " << format_number(neg) << "  min W = "
              << format_number(grid.min_value()) << "\n";
  }
  manifest.write("wigner_summary.json", summary.dump(2) + "\n");
  if (truncated) {
    std::cerr << "error: phase-space grid too narrow, boundary mass above 1e-8\n";
    return kExitPhysics;
  }
  return 0;
}

int cmd_husimi(const GateConfig& cfg, int bin, const std::string& which, const std::string& route,
               RunManifest& manifest) {
  if (bin < 0) bin = cfg.n_bins / 2;
  if (bin >= cfg.n_bins) throw UsageError("--bin must lie in [0, n_bins)");
  if (route != "effect" && route != "wavefunction" && route != "both") {
    throw UsageError("--route must be effect, wavefunction or both");
  }
  std::optional<WeakTrajectory> traj;
  std::optional<WaveAmplitudes> amps;
  if (route != "wavefunction") traj = compute_trajectory(cfg);
  if (route != "effect") amps.emplace(cfg, 2);

  const GridSpec grid{};
  for (Outcome eps : selected_outcomes(which)) {
    std::vector<HusimiSlice> slices;
    if (traj) slices.push_back(husimi_effect_route(*traj, eps, bin, grid));
    if (amps) slices.push_back(husimi_wavefunction_route(*amps, eps, bin, grid));
    for (const HusimiSlice& q : slices) {
      const std::string stem = "husimi_" + std::string(name(eps)) + "_n" + std::to_string(bin) +
                               "_" + std::string(name(q.route));
      manifest.write(stem + ".csv", husimi_csv(q));
      nlohmann::json side = husimi_sidecar(q);
      side["intensity_weak_value"] = intensity_weak_value(q);
      manifest.write(stem + ".json", side.dump(2) + "\n");
      std::cout << stem << ": integral " << format_number(q.integral()) << "\n";
    }
  }
  return 0;
}

int cmd_validate(const GateConfig& cfg, const ValidationOptions& options, RunManifest& manifest) {
  const ValidationReport report = run_validation(cfg, options);
  manifest.write("validation.json", report.to_json().dump(2) + "\n");
  for (const auto& c : report.checks) {
    std::printf("%-4s %-36s error %-12s tol %s\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                format_number(c.max_error).c_str(), format_number(c.tolerance).c_str());
  }
  return report.all_pass() ? 0 : kExitPhysics;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-selected energetics of a driven qubit gate in a waveguide"};
  app.set_version_flag("--version", ANATOMY_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  flags.overrides = {
      app.add_option("--gamma-tau", flags.gamma_tau, "decay rate times pulse duration"),
      app.add_option("--theta-over-pi", flags.theta_over_pi, "gate angle in units of pi"),
      app.add_option("--n-bins", flags.n_bins, "collision time bins"),
      app.add_option("--photon-cap", flags.photon_cap, "emitted photons kept (1 or 2)"),
      app.add_option("--grid-half-width", flags.grid_half_width, "Wigner grid half width"),
      app.add_option("--grid-step", flags.grid_step, "Wigner grid step"),
  };
  app.add_option("--jobs", flags.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", flags.out_dir, "output directory (default $ANATOMY_OUT_DIR or .)");

  auto* trajectory = app.add_subcommand("trajectory", "weak values and field change versus time");

  SweepOptions sweep_options;
  auto* sweep = app.add_subcommand("sweep", "theta sweep of field change and Wigner negativity");
  sweep->add_option("--points", sweep_options.points, "number of angles")->check(CLI::Range(2, 100000));
  sweep->add_flag("--compare-truncation", sweep_options.compare_truncation,
                  "add one- and two-photon truncated estimates");

  std::string wigner_outcome = "both";
  auto* wigner = app.add_subcommand("wigner", "conditional Wigner function of the omega_0 mode");
  wigner->add_option("--outcome", wigner_outcome, "g, e or both");

  int husimi_bin = -1;
  std::string husimi_outcome = "g";
  std::string husimi_route = "both";
  auto* husimi = app.add_subcommand("husimi-slice", "conditional Husimi function of one time bin");
  husimi->add_option("--bin", husimi_bin, "time-bin index (default n_bins / 2)");
  husimi->add_option("--outcome", husimi_outcome, "g, e or both");
  husimi->add_option("--route", husimi_route, "effect, wavefunction or both");

  bool quick = false;
  ValidationOptions validation;
  auto* validate = app.add_subcommand("validate", "invariant suite and brute-force oracle comparison");
  validate->add_flag("--quick", quick, "oracle with 200 bins");
  validate->add_option("--oracle-bins", validation.oracle_bins, "oracle bin count")
      ->check(CLI::Range(2, kOracleMaxBins));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.version = ANATOMY_VERSION;
  int status = 0;
  try {
    manifest.cfg = resolve_config(flags, manifest);
    manifest.out_dir = resolve_out_dir(flags);
    sweep_options.jobs = flags.jobs;
    if (quick) validation.oracle_bins = 200;

    if (*trajectory) {
      manifest.subcommand = "trajectory";
      status = cmd_trajectory(manifest.cfg, manifest);
    } else if (*sweep) {
      manifest.subcommand = "sweep";
      status = cmd_sweep(manifest.cfg, sweep_options, manifest);
    } else if (*wigner) {
      manifest.subcommand = "wigner";
      status = cmd_wigner(manifest.cfg, wigner_outcome, manifest);
    } else if (*husimi) {
      manifest.subcommand = "husimi-slice";
      status = cmd_husimi(manifest.cfg, husimi_bin, husimi_outcome, husimi_route, manifest);
    } else if (*validate) {
      manifest.subcommand = "validate";
      status = cmd_validate(manifest.cfg, validation, manifest);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPhysics;
  }

  manifest.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    const std::string text = manifest.to_json().dump(2) + "\n";
    std::ofstream out(manifest.out_dir / "manifest.json", std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write manifest.json");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return status;
}
