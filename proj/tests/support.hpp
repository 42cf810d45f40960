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

// Hand-rolled generators and brute-force oracles shared by the unit tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "walkcover/exact.hpp"
#include "walkcover/lattice.hpp"

namespace walkcover::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return between(0, 1) == 1; }

  LatticePoint point(std::size_t d, Coord radius) {
    std::vector<Coord> c(d);
    for (Coord& v : c) v = between(-radius, radius);
    return LatticePoint(std::move(c));
  }

  // Nearest-neighbor path with `steps` uniformly random steps from `start`.
  Path walk(const LatticePoint& start, std::size_t steps) {
    std::vector<LatticePoint> pts{start};
    for (std::size_t t = 0; t < steps; ++t) {
      const auto axis = static_cast<std::size_t>(between(0, static_cast<std::int64_t>(start.dim()) - 1));
      pts.push_back(pts.back().with(axis, pts.back()[axis] + (coin() ? 1 : -1)));
    }
    return validate_path(std::move(pts));
  }

  // Coordinate-increasing path from the origin.
  Path monotone(std::size_t d, std::size_t steps) {
    std::vector<LatticePoint> pts{LatticePoint::origin(d)};
    for (std::size_t t = 0; t < steps; ++t) {
      const auto axis = static_cast<std::size_t>(between(0, static_cast<std::int64_t>(d) - 1));
      pts.push_back(pts.back().with(axis, pts.back()[axis] + 1));
    }
    return validate_path(std::move(pts));
  }

  std::vector<LatticePoint> distinct_points(std::size_t d, Coord radius, std::size_t k) {
    std::vector<LatticePoint> out;
    while (out.size() < k) {
      LatticePoint p = point(d, radius);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Number of L-step walks from the origin that meet every requirement of the
// target, by plain enumeration of all (2d)^L step sequences.
inline std::uint64_t brute_force_cover(const CoverTarget& target, std::size_t d, std::size_t steps) {
  const std::size_t dirs = 2 * d;
  std::vector<std::size_t> seq(steps, 0);
  std::uint64_t favorable = 0;
  for (;;) {
    std::map<LatticePoint, std::uint32_t> visits;
    LatticePoint pos = LatticePoint::origin(d);
    ++visits[pos];
    for (std::size_t s : seq) {
      const std::size_t axis = s / 2;
      pos = pos.with(axis, pos[axis] + (s % 2 == 0 ? 1 : -1));
      ++visits[pos];
    }
    bool ok = true;
    for (std::size_t i = 0; i < target.points().size() && ok; ++i) {
      const auto it = visits.find(target.points()[i]);
      ok = it != visits.end() && it->second >= target.required()[i];
    }
    favorable += ok;
    std::size_t k = 0;
    while (k < steps && ++seq[k] == dirs) seq[k++] = 0;
    if (k == steps) break;
  }
  return favorable;
}

}  // namespace walkcover::testing
