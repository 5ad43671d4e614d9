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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("anatomy_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs the CLI with `args`, stdout and stderr into `log`; returns the exit code.
int run(const std::string& args, const fs::path& log, const std::string& env = {}) {
  const std::string cmd =
      env + " \"" + std::string(ANATOMY_CLI_PATH) + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  const fs::path dir = scratch("usage");
  const fs::path log = dir / "log.txt";
  CHECK(run("", log) == 2);
  CHECK(run("trajectory --no-such-flag", log) == 2);
  CHECK(run("--photon-cap 3 trajectory --out-dir " + dir.string(), log) == 2);
  CHECK(run("--gamma-tau -1 trajectory --out-dir " + dir.string(), log) == 2);
  CHECK(run("wigner --outcome x --out-dir " + dir.string(), log) == 2);
  std::ofstream(dir / "plain_file") << "x";
  CHECK(run("--out-dir " + (dir / "plain_file" / "sub").string() + " trajectory --n-bins 10", log) == 2);
  CHECK(run("--version", log) == 0);
}

TEST_CASE("trajectory outputs") {
  const fs::path dir = scratch("trajectory");
  REQUIRE(run("--n-bins 400 --out-dir " + dir.string() + " trajectory", dir / "log.txt") == 0);
  const auto rows = read_csv(dir / "trajectory.csv");
  REQUIRE(rows.size() == 402);
  for (const auto& r : rows) CHECK(r.size() == 11);
  CHECK(std::stod(rows.back()[9]) < -1.0);
  const auto unc = read_csv(dir / "trajectory_unconditional.csv");
  CHECK(std::abs(std::stod(unc.back()[1]) - std::stod(unc.back()[2])) <= 10.0 / 400);
  CHECK(fs::exists(dir / "trajectory.svg"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["subcommand"] == "trajectory");
  CHECK(manifest["config"]["n_bins"] == 400);
  CHECK(manifest["outputs"].size() == 3);
}

TEST_CASE("outputs are byte-identical across runs") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(run("--n-bins 200 --jobs 1 --out-dir " + a.string() + " sweep --points 6", a / "log.txt") == 0);
  REQUIRE(run("--n-bins 200 --jobs 3 --out-dir " + b.string() + " sweep --points 6", b / "log.txt") == 0);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  CHECK(slurp(a / "sweep_dN.svg") == slurp(b / "sweep_dN.svg"));
  CHECK(read_csv(a / "sweep.csv").size() == 7);
}

TEST_CASE("sweep with truncation columns") {
  const fs::path dir = scratch("sweep");
  REQUIRE(run("--n-bins 200 --out-dir " + dir.string() + " sweep --points 5 --compare-truncation",
              dir / "log.txt") == 0);
  const auto rows = read_csv(dir / "sweep.csv");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].size() == 13);
  CHECK(rows[0][9] == "dN_trunc1_g");
}

TEST_CASE("wigner outputs") {
  const fs::path dir = scratch("wigner");
  REQUIRE(run("--n-bins 1000 --out-dir " + dir.string() + " wigner", dir / "log.txt") == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "wigner_summary.json"));
  CHECK(summary["g"]["negativity"].get<double>() > 1e-4);
  CHECK(summary["e"]["min"].get<double>() >= -1e-6);
  CHECK(slurp(dir / "wigner_g.svg").find("ff\" data-v=\"-") != std::string::npos);
  CHECK(read_csv(dir / "wigner_g.csv").size() == 1 + 351 * 351);
  CHECK(run("--n-bins 200 --grid-half-width 1 --grid-step 0.1 --out-dir " + dir.string() +
                " wigner --outcome g",
            dir / "log.txt") == 1);
}

TEST_CASE("husimi slice outputs") {
  const fs::path dir = scratch("husimi");
  REQUIRE(run("--n-bins 400 --out-dir " + dir.string() + " husimi-slice --bin 100 --outcome e --route both",
              dir / "log.txt") == 0);
  for (const char* route : {"effect", "wavefunction"}) {
    const std::string stem = std::string("husimi_e_n100_") + route;
    CHECK(fs::exists(dir / (stem + ".csv")));
    const auto side = nlohmann::json::parse(slurp(dir / (stem + ".json")));
    CHECK(std::abs(side["integration"]["integral"].get<double>() - 1.0) <= 1e-4);
  }
  CHECK(run("--n-bins 400 --out-dir " + dir.string() + " husimi-slice --bin 400", dir / "log.txt") == 2);
}

TEST_CASE("output directory from the environment and config files") {
  const fs::path dir = scratch("env");
  const fs::path cfg = dir / "gate.cfg";
  std::ofstream(cfg) << "# test gate\ngamma_tau = 0.5\ntheta_over_pi: 0.5\nn_bins = 100\n";
  REQUIRE(run("--config " + cfg.string() + " trajectory", dir / "log.txt",
              "ANATOMY_OUT_DIR=\"" + dir.string() + "\"") == 0);
  CHECK(read_csv(dir / "trajectory.csv").size() == 102);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["config"]["gamma_tau"].get<double>() == 0.5);
  CHECK(manifest["inputs"].size() == 1);
}

TEST_CASE("quick validation passes") {
  const fs::path dir = scratch("validate");
  CHECK(run("--n-bins 1000 --out-dir " + dir.string() + " validate --quick", dir / "log.txt") == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "validation.json"));
  CHECK(report["pass"] == true);
  CHECK(run("--gamma-tau 0 --n-bins 100 --out-dir " + dir.string() + " validate --quick",
            dir / "log.txt") == 2);
}
