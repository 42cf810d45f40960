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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "walkcover/lattice.hpp"
#include "walkcover/reflect.hpp"

namespace walkcover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Upper limit on (2d)^L for any exhaustive enumeration.
inline constexpr std::uint64_t kEnumerationBudget = 1'000'000'000ULL;

// (2d)^L.
BigInt walk_count(std::size_t d, std::size_t steps);
// Throws BudgetExceeded when (2d)^L exceeds `budget`.
void check_budget(std::size_t d, std::size_t steps, std::uint64_t budget = kEnumerationBudget);

struct ExactResult {
  BigInt favorable;
  BigInt total;

  Rational probability() const { return Rational(favorable, total); }
  double approx() const { return static_cast<double>(probability()); }
};

ExactResult exact_cover_probability(const CoverTarget& target, std::size_t d, std::size_t steps,
                                    unsigned threads = 0);

struct ReflectedPairCounts {
  BigInt covering_original;   // walks covering A0 and B0
  BigInt covering_reflected;  // walks covering A0 and the mirror image of B0
  BigInt total;
};

// A0 and B0 must be disjoint and lie on the origin side of h; throws
// SideViolation otherwise.
ReflectedPairCounts count_reflected_pair(const std::vector<LatticePoint>& a0, const std::vector<LatticePoint>& b0,
                                         const Hyperplane& h, std::size_t d, std::size_t steps,
                                         unsigned threads = 0);

struct StaircaseRow {
  std::vector<LatticePoint> trace;
  Path example;
  std::size_t path_count = 0;
  BigInt favorable;
  bool is_staircase = false;
};

struct StaircaseReport {
  std::size_t radius = 0;
  std::size_t d = 0;
  std::size_t steps = 0;
  std::size_t max_points = 0;
  BigInt total;
  std::vector<StaircaseRow> rows;  // sorted by favorable, descending
  std::size_t staircase_rank = 0;  // 1 + number of rows strictly above it
  bool staircase_is_max = false;
};

// Ranks every nearest-neighbor path from the origin to the L1 sphere of
// the given radius that has at most max_points points, by the exact
// probability that an L-step walk covers its trace.
StaircaseReport verify_staircase_max(std::size_t radius, std::size_t d, std::size_t steps, std::size_t max_points,
                                     unsigned threads = 0);

struct ReflectionViolation {
  std::vector<LatticePoint> a0;
  std::vector<LatticePoint> b0;
  std::size_t steps = 0;
  std::uint64_t covering_original = 0;
  std::uint64_t covering_reflected = 0;
};

struct ReflectionSweepReport {
  std::size_t max_steps = 0;
  std::size_t candidate_points = 0;
  std::uint64_t pairs = 0;   // (A0, B0) pairs per length
  std::uint64_t checks = 0;  // pairs times lengths
  std::uint64_t violations = 0;
  std::uint64_t strict = 0;  // checks with a strict inequality
  std::optional<ReflectionViolation> first_violation;
};

// Every disjoint (A0, B0) with |A0|, |B0| <= max_set_size drawn from the
// origin-side points of the box |x|_inf <= box_radius, for L = 0..max_steps.
ReflectionSweepReport sweep_reflected_pairs(const Hyperplane& h, std::size_t d, std::size_t max_steps,
                                            Coord box_radius, std::size_t max_set_size, unsigned threads = 0);

struct ClassCounts {
  Path representative;
  std::uint64_t members = 0;
  std::size_t nontrivial_arcs = 0;
  std::uint64_t direct_original = 0;   // members covering A0 and B0
  std::uint64_t direct_reflected = 0;  // members covering A0 and the image of B0
  std::uint64_t comb_original = 0;     // the same two counts via sign configurations
  std::uint64_t comb_reflected = 0;
  std::uint64_t comb_all_positive = 0;  // |C(V, ground)| on the larger ground set
};

// Splits all L-step walks into reflection classes and counts coverage in
// each class both directly and through the arc/configuration encoding.
std::vector<ClassCounts> class_refinement(const std::vector<LatticePoint>& a0, const std::vector<LatticePoint>& b0,
                                          const Hyperplane& h, std::size_t d, std::size_t steps);

}  // namespace walkcover
