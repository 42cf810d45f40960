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
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "walkcover/green.hpp"
#include "walkcover/lattice.hpp"

namespace walkcover {

// Where a simple walk on Z^d started at `start` first lands in `set`.
// Entry times are n >= 1, so a start inside the set is not an entry.
struct HittingQuery {
  LatticePoint start;
  std::vector<LatticePoint> set;  // nonempty, distinct
};

struct FirstEntry {
  std::vector<BoundedValue> probability;  // aligned with the query set
  BoundedValue total;                     // P(the set is ever entered)
};

// Solves sum_j P(enter at s_j) G(s_j - s_i) = G(s_i - start) by Gaussian
// elimination with partial pivoting. A start on the set is handled by
// conditioning on the first step. Green values are requested at `tol`.
FirstEntry first_entry_distribution(const HittingQuery& q, double tol = 1e-6);

// Probability that a simple walk on Z^d at some site eventually makes
// `outstanding[i]` more visits (at times >= 1) to sites[i], for every i.
// Far from the sites (d = 3 only) the Green values come from the far-field
// expansion; elsewhere from green_value. Thread-safe; memoises per site.
class CompletionCalculator {
 public:
  CompletionCalculator(std::size_t d, std::vector<LatticePoint> sites, double tol = 1e-6);

  std::size_t dim() const noexcept { return d_; }
  const std::vector<LatticePoint>& sites() const noexcept { return sites_; }
  double probability(const LatticePoint& from, std::span<const std::uint32_t> outstanding);
  // First-entry distribution over all sites from `from` (times >= 1).
  std::vector<double> first_entry(const LatticePoint& from);

 private:
  std::vector<double> entry(const LatticePoint& from, const std::vector<std::size_t>& support);
  double from_site(std::size_t site, const std::vector<std::uint32_t>& outstanding);

  std::size_t d_;
  std::vector<LatticePoint> sites_;
  double tol_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, double> memo_;
};

// Hitting quantities of the four-point square o=(0,0,0), y=(1,0,0),
// w=(1,1,0), z=(0,1,0) and the two covering probabilities assembled from
// them: p1 for the path (o,y,w,z), p2 for (o,y,w,y) counted with
// repetitions, both over an infinite horizon.
struct CounterexampleReport {
  BoundedValue green_origin;    // G(o)
  BoundedValue hit_y;           // P_o(ever visit y) = G(y)/G(o)
  BoundedValue hit_w;           // P_o(ever visit w)
  BoundedValue return_o;        // P_o(return to o)
  BoundedValue yz_first_y;      // entry at y among {y, z}
  BoundedValue yzw_first_y;     // entry at y among {y, z, w}
  BoundedValue yzw_first_w;     // entry at w among {y, z, w}
  BoundedValue yw_first_y;      // entry at y among {y, w}
  BoundedValue yw_first_w;      // entry at w among {y, w}
  BoundedValue oy_first_o;      // from o, first of {o, y} at a time >= 1 is o
  BoundedValue oy_first_y;      // ... is y
  BoundedValue p1;              // last factor P_o(ever visit w)
  BoundedValue p1_alt;          // same with last factor P_o(ever visit y)
  BoundedValue p2;
  bool p1_exceeds_p2 = false;
  std::string notes;
};

CounterexampleReport counterexample_probabilities(double tol = 1e-6);

}  // namespace walkcover
