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

#include "walkcover/census.hpp"

#include <algorithm>
#include <unordered_map>

#include "target_index.hpp"
#include "walkcover/errors.hpp"
#include "walkcover/exact.hpp"
#include "walkcover/parallel.hpp"

namespace walkcover {

namespace {

using Histogram = std::vector<std::unordered_map<std::uint64_t, std::uint64_t>>;

class CensusWalker {
 public:
  CensusWalker(const detail::TargetIndex& index, std::size_t d, Histogram& hist)
      : index_(index), d_(d), pos_(d, 0), hist_(hist) {}

  void step(std::size_t direction) { pos_[direction / 2] += direction % 2 ? -1 : 1; }
  std::uint64_t mark(std::uint64_t mask) const {
    const int k = index_.find(pos_.data());
    return k >= 0 ? mask | (std::uint64_t{1} << k) : mask;
  }

  void run(std::size_t depth, std::size_t max_depth, std::uint64_t mask) {
    ++hist_[depth][mask];
    if (depth == max_depth) return;
    for (std::size_t axis = 0; axis < d_; ++axis) {
      for (Coord delta : {Coord{1}, Coord{-1}}) {
        pos_[axis] += delta;
        run(depth + 1, max_depth, mark(mask));
        pos_[axis] -= delta;
      }
    }
  }

 private:
  const detail::TargetIndex& index_;
  std::size_t d_;
  std::vector<Coord> pos_;
  Histogram& hist_;
};

}  // namespace

TraceCensus::TraceCensus(std::vector<LatticePoint> window, std::size_t d, std::size_t max_steps, unsigned threads)
    : d_(d), max_steps_(max_steps), window_(std::move(window)) {
  check_budget(d, max_steps);
  std::sort(window_.begin(), window_.end());
  window_.erase(std::unique(window_.begin(), window_.end()), window_.end());
  if (window_.size() > 64) throw TooLarge("census window holds at most 64 points");
  const detail::TargetIndex index(window_, d);

  // Depth 0 is the origin alone; deeper levels split on the first step.
  std::vector<Histogram> parts(2 * d, Histogram(max_steps + 1));
  const std::uint64_t origin_mask = [&] {
    const std::vector<Coord> zero(d, 0);
    const int k = index.find(zero.data());
    return k >= 0 ? std::uint64_t{1} << k : 0;
  }();
  if (max_steps > 0) {
    parallel_for(2 * d, threads, [&](std::size_t direction) {
      CensusWalker walker(index, d, parts[direction]);
      walker.step(direction);
      walker.run(1, max_steps, walker.mark(origin_mask));
    });
  }
  by_length_.resize(max_steps + 1);
  by_length_[0].push_back({origin_mask, 1});
  for (std::size_t len = 1; len <= max_steps; ++len) {
    std::unordered_map<std::uint64_t, std::uint64_t> merged;
    for (const Histogram& h : parts) {
      for (const auto& [mask, count] : h[len]) merged[mask] += count;
    }
    auto& entries = by_length_[len];
    entries.reserve(merged.size());
    for (const auto& [mask, count] : merged) entries.push_back({mask, count});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.mask < b.mask; });
  }
}

bool TraceCensus::in_window(const LatticePoint& p) const {
  return std::binary_search(window_.begin(), window_.end(), p);
}

std::uint64_t TraceCensus::mask_of(std::span<const LatticePoint> points) const {
  std::uint64_t mask = 0;
  for (const LatticePoint& p : points) {
    const auto it = std::lower_bound(window_.begin(), window_.end(), p);
    if (it == window_.end() || *it != p) throw InvalidArgument("point " + to_string(p) + " is outside the census window");
    mask |= std::uint64_t{1} << (it - window_.begin());
  }
  return mask;
}

std::uint64_t TraceCensus::favorable(std::uint64_t mask, std::size_t steps) const {
  std::uint64_t total = 0;
  for (const Entry& e : by_length_.at(steps)) {
    if ((e.mask & mask) == mask) total += e.count;
  }
  return total;
}

std::vector<LatticePoint> l1_ball(std::size_t d, Coord radius) {
  std::vector<LatticePoint> out;
  for (const LatticePoint& p : linf_box(d, radius)) {
    if (p.l1_norm() <= radius) out.push_back(p);
  }
  return out;
}

std::vector<LatticePoint> linf_box(std::size_t d, Coord radius) {
  std::vector<LatticePoint> out;
  std::vector<Coord> c(d, -radius);
  for (;;) {
    out.emplace_back(c);
    std::size_t i = 0;
    while (i < d && c[i] == radius) c[i++] = -radius;
    if (i == d) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace walkcover
