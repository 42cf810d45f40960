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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace walkcover {

using Coord = std::int64_t;

// Paths are confined to |coordinate| <= 2^31 so that every L1 sum over a
// path fits comfortably in 64 bits.
inline constexpr Coord kCoordLimit = Coord{1} << 31;

class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<Coord> coords) : coords_(coords) {}

  static LatticePoint origin(std::size_t d) { return LatticePoint(std::vector<Coord>(d, 0)); }
  // sign * e_axis (axis is 0-based).
  static LatticePoint unit(std::size_t d, std::size_t axis, Coord sign = 1);

  std::size_t dim() const noexcept { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Coord> coords() const noexcept { return coords_; }

  Coord l1_norm() const noexcept;
  bool is_origin() const noexcept;
  LatticePoint with(std::size_t axis, Coord value) const;

  LatticePoint operator+(const LatticePoint& other) const;
  LatticePoint operator-(const LatticePoint& other) const;
  LatticePoint operator-() const;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

 private:
  std::vector<Coord> coords_;
};

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept;
};

Coord l1_distance(const LatticePoint& a, const LatticePoint& b);
std::string to_string(const LatticePoint& p);

// The 2d nearest neighbors, ordered +e_0, -e_0, +e_1, -e_1, ...
std::vector<LatticePoint> neighbors(const LatticePoint& p);

// A validated nearest-neighbor path. Construct through validate_path.
class Path {
 public:
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t steps() const noexcept { return points_.size() - 1; }
  std::size_t dim() const noexcept { return points_.front().dim(); }

  const LatticePoint& operator[](std::size_t i) const { return points_[i]; }
  const LatticePoint& front() const { return points_.front(); }
  const LatticePoint& back() const { return points_.back(); }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  const std::vector<LatticePoint>& points() const noexcept { return points_; }

  // Distinct points, sorted.
  const std::vector<LatticePoint>& trace() const noexcept { return trace_; }
  bool is_simple() const noexcept { return trace_.size() == points_.size(); }
  bool contains(const LatticePoint& p) const;

  friend bool operator==(const Path& a, const Path& b) { return a.points_ == b.points_; }
  friend auto operator<=>(const Path& a, const Path& b) { return a.points_ <=> b.points_; }

 private:
  friend Path validate_path(std::vector<LatticePoint> points);
  explicit Path(std::vector<LatticePoint> points);

  std::vector<LatticePoint> points_;
  std::vector<LatticePoint> trace_;
};

// Throws DimensionMismatch, NotNearestNeighbor or CoordinateOutOfRange.
Path validate_path(std::vector<LatticePoint> points);

bool connects_origin_to_sphere(const Path& path, Coord radius);

// Monotone path hugging the diagonal: the t-th point is
// floor(t/d) * (1,...,1) + e_0 + ... + e_{(t mod d) - 1}.
Path staircase_path(std::size_t n, std::size_t d);
Path straight_path(std::size_t n, std::size_t d);
// One n-step coordinate-increasing path from the origin per class under
// axis permutations. Axes are labelled in order of first use and classes
// are listed in lexicographic order of their axis sequences, so the
// straight path comes first. n <= 12.
std::vector<Path> monotone_path_classes(std::size_t n, std::size_t d);

// Sum over distinct trace points of sum_{i<j} |a_i - a_j|.
std::uint64_t total_difference(const Path& path);

class RepetitionProfile {
 public:
  RepetitionProfile() = default;
  explicit RepetitionProfile(std::map<LatticePoint, std::size_t> counts);

  std::size_t count(const LatticePoint& p) const;
  std::size_t total() const noexcept { return total_; }
  const std::map<LatticePoint, std::size_t>& counts() const noexcept { return counts_; }

  friend bool operator==(const RepetitionProfile&, const RepetitionProfile&) = default;

 private:
  std::map<LatticePoint, std::size_t> counts_;
  std::size_t total_ = 0;
};

RepetitionProfile repetition_profile(const Path& path);

enum class CoverMode { Trace, Repetitions };

std::string to_string(CoverMode mode);
CoverMode parse_cover_mode(const std::string& text);

// What a walk has to do to succeed: visit each listed point at least
// required(k) times (time 0 counts as a visit to the origin).
class CoverTarget {
 public:
  static CoverTarget of_points(std::vector<LatticePoint> points);
  static CoverTarget of_path(const Path& path, CoverMode mode);
  static CoverTarget of_profile(const RepetitionProfile& profile);

  CoverMode mode() const noexcept { return mode_; }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  const std::vector<std::uint32_t>& required() const noexcept { return required_; }
  // Present only in Repetitions mode.
  RepetitionProfile profile() const;

 private:
  CoverTarget(CoverMode mode, std::vector<LatticePoint> points, std::vector<std::uint32_t> required);

  CoverMode mode_ = CoverMode::Trace;
  std::vector<LatticePoint> points_;
  std::vector<std::uint32_t> required_;
};

}  // namespace walkcover
