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

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace anatomy {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<std::complex<Scalar>, 3, 3>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

using Matrix2c = Matrix2<double>;
using Matrix3c = Matrix3<double>;
using Matrix4c = Matrix4<double>;
using Vector2c = Eigen::Vector2cd;
using VectorXr = Eigen::VectorXd;
using MatrixXr = Eigen::MatrixXd;

/// Outcome of the final projective qubit measurement.
enum class Outcome : int { g = 0, e = 1 };

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::g, Outcome::e};

constexpr int index(Outcome eps) { return static_cast<int>(eps); }

constexpr std::string_view name(Outcome eps) { return eps == Outcome::g ? "g" : "e"; }

Outcome parse_outcome(std::string_view s);

/// Post-selection probability below which weak values are not reported.
inline constexpr double kMinPostSelection = 1e-12;

/// Raised when a weak value is requested for a (near) impossible outcome.
class PostSelectionError : public std::runtime_error {
 public:
  PostSelectionError(Outcome eps, double probability);
  Outcome outcome() const { return eps_; }
  double probability() const { return probability_; }

 private:
  Outcome eps_;
  double probability_;
};

/// Phase-space grid too narrow for the function sampled on it.
class GridTruncationError : public std::runtime_error {
 public:
  explicit GridTruncationError(double boundary_mass);
  double boundary_mass() const { return boundary_mass_; }

 private:
  double boundary_mass_;
};

/// Square grid of complex points centred on `center`: center + h*(i + i*j) for
/// i, j in [-K, K] with K = round(half_width / step).
struct GridSpec {
  double half_width = 5.0;
  double step = 0.05;

  int points_per_axis() const;
  double coordinate(int i) const;
};

}  // namespace anatomy
