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
#include <span>
#include <vector>

#include "walkcover/lattice.hpp"

namespace walkcover {

// Histogram of walk traces restricted to a window of at most 64 points,
// recorded for every walk length 0..max_steps in one enumeration.
// favorable(mask, L) counts L-step walks visiting every window point in mask.
class TraceCensus {
 public:
  TraceCensus(std::vector<LatticePoint> window, std::size_t d, std::size_t max_steps, unsigned threads = 0);

  std::size_t dim() const noexcept { return d_; }
  std::size_t max_steps() const noexcept { return max_steps_; }
  const std::vector<LatticePoint>& window() const noexcept { return window_; }

  bool in_window(const LatticePoint& p) const;
  // Throws InvalidArgument for points outside the window.
  std::uint64_t mask_of(std::span<const LatticePoint> points) const;

  std::uint64_t favorable(std::uint64_t mask, std::size_t steps) const;
  // Distinct window-trace masks observed at the given length.
  std::size_t distinct_masks(std::size_t steps) const { return by_length_.at(steps).size(); }

 private:
  struct Entry {
    std::uint64_t mask;
    std::uint64_t count;
  };

  std::size_t d_;
  std::size_t max_steps_;
  std::vector<LatticePoint> window_;
  std::vector<std::vector<Entry>> by_length_;
};

// All points with |x|_1 <= radius, sorted.
std::vector<LatticePoint> l1_ball(std::size_t d, Coord radius);
// All points with |x|_inf <= radius, sorted.
std::vector<LatticePoint> linf_box(std::size_t d, Coord radius);

}  // namespace walkcover
