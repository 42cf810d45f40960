// Copyright 2026 The walkcover Authors
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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walkcover/lattice.hpp"

namespace walkcover {

enum class WalkKind { Simple, DiagonalDifference };

// Step distribution of either the simple walk on Z^d or the walk of
// consecutive coordinate differences (X_1 - X_2, ..., X_{d-1} - X_d) of a
// simple walk on Z^d, which lives on Z^(d-1).
class WalkSpectrum {
 public:
  static WalkSpectrum simple(std::size_t d);
  static WalkSpectrum diagonal_difference(std::size_t d);

  WalkKind kind() const noexcept { return kind_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t dim() const noexcept { return kind_ == WalkKind::Simple ? d_ : d_ - 1; }
  bool transient() const noexcept { return dim() >= 3; }
  std::string name() const;

  // E[exp(i theta . step)], a real number for both kinds.
  double character(std::span<const double> theta) const;
  // 1 - character, evaluated without cancellation near theta = 0.
  double one_minus_character(std::span<const double> theta) const;

 private:
  WalkSpectrum(WalkKind kind, std::size_t d) : kind_(kind), d_(d) {}
  WalkKind kind_;
  std::size_t d_;
};

enum class GreenMethod { Fourier, StepSum };
std::string to_string(GreenMethod method);

struct GreenValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
  GreenMethod method = GreenMethod::StepSum;
};

struct GreenEvaluation {
  GreenValue chosen;  // the one with the smaller bound
  GreenValue step_sum;
  std::optional<GreenValue> fourier;  // computed when dim <= kFourierMaxDim
};

inline constexpr std::size_t kFourierMaxDim = 4;

// Expected number of visits to x, sum_n P(walk at x after n steps).
// Throws RecurrentWalk for dim < 3, ToleranceUnreachable when the budget
// cannot meet tol or when the two methods disagree.
GreenValue green_value(const WalkSpectrum& spec, const LatticePoint& x, double tol = 1e-6);
GreenEvaluation green_evaluate(const WalkSpectrum& spec, const LatticePoint& x, double tol = 1e-6);

// The individual methods, uncached. Each returns its best estimate, whose
// bound can exceed tol when the work budget runs out.
GreenValue green_step_sum(const WalkSpectrum& spec, const LatticePoint& x, double tol);
GreenValue green_fourier(const WalkSpectrum& spec, const LatticePoint& x, double tol);

struct BoundedValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

// Interval-style propagation of the bounds.
BoundedValue operator+(const BoundedValue& a, const BoundedValue& b);
BoundedValue operator-(const BoundedValue& a, const BoundedValue& b);
BoundedValue operator*(const BoundedValue& a, const BoundedValue& b);
BoundedValue operator*(double a, const BoundedValue& b);
BoundedValue operator/(const BoundedValue& a, const BoundedValue& b);

// Two-term expansion of the simple-walk Green function on Z^3,
// 3/(2 pi r) (1 + (5 sum x_i^4 / r^4 - 3) / (8 r^2)), with a relative error
// bound of 2 / r^4. Requires |x| >= kFarFieldRadius.
inline constexpr double kFarFieldRadius = 3.0;
BoundedValue green_far_field(const LatticePoint& x);

// 1 - 1/G(0) for the simple walk on Z^d.
BoundedValue return_probability(std::size_t d, double tol = 1e-6);
// 1 - 1/G(0) for the difference walk of Z^d (returns of the simple walk to
// the main diagonal); d >= 4.
BoundedValue diagonal_return_probability(std::size_t d, double tol = 1e-6);

// Green value of the difference walk of Z^d at e_j - e_i, with the
// convention e_0 = 0 (indices 0 .. d-1).
GreenValue offdiag_green(std::size_t d, std::size_t i, std::size_t j, double tol = 1e-6);
// Cyclic index distance min(|i - j|, d - |i - j|).
std::size_t cyclic_distance(std::size_t d, std::size_t i, std::size_t j);

struct OffdiagSumCheck {
  double sum_minus_one = 0.0;  // sum_j G(e_j - e_i) - 1
  double error_bound = 0.0;
  double limit = 0.0;  // 28 / d
  bool holds = false;
};
OffdiagSumCheck offdiag_sum_check(std::size_t d, std::size_t i, double tol = 1e-5);

// |integral over [-pi,pi]^(d-1) of cos(theta_j - theta_i) * phi^k| for the
// difference-walk character phi, with theta_0 = theta_d = 0. The integrand
// is a trigonometric polynomial, so a uniform grid evaluates it exactly up
// to rounding.
double lemma_a5_check(std::size_t d, std::size_t i, std::size_t j, std::size_t k);
// The same integral, signed.
double diagonal_moment_integral(std::size_t d, std::size_t i, std::size_t j, std::size_t k);

struct SweepRow {
  std::size_t d = 0;
  BoundedValue p;  // return probability
  double two_d_p = 0.0;
  std::optional<BoundedValue> diag_p;  // d >= 4
  std::optional<double> two_d_diag_p;
  BoundedValue excess;  // G(0) - 1 - 1/(2d)
  double d_excess = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  bool two_d_p_decreasing = true;
  bool two_d_p_above_one = true;
  bool diag_p_nonincreasing = true;
  bool two_d_diag_p_decreasing = true;
  bool two_d_diag_p_above_one = true;
  bool d_excess_decreasing = true;
  bool p_above_lower_bound = true;  // p_d > 1/(2d)
};

SweepTable asymptotic_sweep(std::size_t d_min, std::size_t d_max, double tol = 1e-5);

}  // namespace walkcover
