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
#include <cstdint>
#include <utility>
#include <vector>

#include "walkcover/lattice.hpp"

namespace walkcover {

// The locus x[first] = x[second] + offset. Axes are 0-based.
struct Hyperplane {
  std::size_t first = 0;
  std::size_t second = 1;
  Coord offset = 0;

  Hyperplane() = default;
  Hyperplane(std::size_t first_axis, std::size_t second_axis, Coord off);

  // x[first] - x[second] - offset.
  Coord signed_gap(const LatticePoint& p) const;
  bool contains(const LatticePoint& p) const { return signed_gap(p) == 0; }
  // True for points on the hyperplane or strictly on the side of the origin.
  // When the origin lies on the hyperplane, that side is x[first] <= x[second].
  bool on_origin_side(const LatticePoint& p) const;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<std::int8_t> signs);
  static SignVector all_plus(std::size_t n) { return SignVector(std::vector<std::int8_t>(n, 1)); }

  std::size_t size() const noexcept { return signs_.size(); }
  std::int8_t operator[](std::size_t k) const { return signs_[k]; }
  const std::vector<std::int8_t>& signs() const noexcept { return signs_; }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<std::int8_t> signs_;
};

struct ArcDecomposition {
  std::vector<LatticePoint> prefix;
  std::vector<std::vector<LatticePoint>> arcs;
  std::vector<std::size_t> visit_times;
};

LatticePoint reflect_point(const LatticePoint& p, const Hyperplane& h);

ArcDecomposition arc_decompose(const Path& path, const Hyperplane& h);

// Reflects arc k when D[k] == -1. Throws SignVectorTooShort.
Path apply_configuration(const Path& path, const Hyperplane& h, const SignVector& signs);

// The class member with every arc on the origin side, plus the signs that
// map it back to the input.
std::pair<Path, SignVector> canonical_representative(const Path& path, const Hyperplane& h);

// Number of arcs whose trace has more than one point; each contributes a
// factor of two to the class size.
std::size_t nontrivial_arc_count(const Path& path, const Hyperplane& h);

struct ReductionStep {
  Hyperplane plane;
  Path path;
};

// Flips coordinate signs so the endpoint lies in the closed positive orthant.
Path normalize_to_positive_orthant(const Path& path);

// Reflection chain taking a path from the origin to the sphere of radius
// |endpoint|_1 into the diagonal band max|a_i - a_j| <= 1 with nonincreasing
// coordinates. Only steps that change the path are recorded.
// Throws NotConnecting when the path does not qualify.
std::vector<ReductionStep> reduce_path(const Path& path);

}  // namespace walkcover
