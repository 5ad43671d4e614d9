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

#include <string>
#include <vector>

#include <json.hpp>

#include "anatomy/config.hpp"

namespace anatomy {

struct ValidationCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ValidationOptions {
  int oracle_bins = 800;  ///< N_o; --quick uses 200
  int oracle_cap = 2;
};

struct ValidationReport {
  GateConfig cfg;
  ValidationOptions options;
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

/// Invariant suite of the analytic modules plus the brute-force oracle
/// comparison at cfg's gamma and theta.
ValidationReport run_validation(const GateConfig& cfg, const ValidationOptions& options);

}  // namespace anatomy
