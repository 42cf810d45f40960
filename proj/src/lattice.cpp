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

#include "walkcover/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "walkcover/errors.hpp"

namespace walkcover {

LatticePoint LatticePoint::unit(std::size_t d, std::size_t axis, Coord sign) {
  std::vector<Coord> c(d, 0);
  c.at(axis) = sign;
  return LatticePoint(std::move(c));
}

Coord LatticePoint::l1_norm() const noexcept {
  Coord s = 0;
  for (Coord c : coords_) s += c < 0 ? -c : c;
  return s;
}

bool LatticePoint::is_origin() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](Coord c) { return c == 0; });
}

LatticePoint LatticePoint::with(std::size_t axis, Coord value) const {
  LatticePoint p = *this;
  p.coords_.at(axis) = value;
  return p;
}

LatticePoint LatticePoint::operator+(const LatticePoint& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("point dimensions differ");
  LatticePoint p = *this;
  for (std::size_t i = 0; i < dim(); ++i) p.coords_[i] += other.coords_[i];
  return p;
}

LatticePoint LatticePoint::operator-(const LatticePoint& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("point dimensions differ");
  LatticePoint p = *this;
  for (std::size_t i = 0; i < dim(); ++i) p.coords_[i] -= other.coords_[i];
  return p;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint p = *this;
  for (Coord& c : p.coords_) c = -c;
  return p;
}

std::size_t LatticePointHash::operator()(const LatticePoint& p) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p.dim();
  for (Coord c : p.coords()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

Coord l1_distance(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("point dimensions differ");
  Coord s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::llabs(a[i] - b[i]);
  return s;
}

std::string to_string(const LatticePoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

std::vector<LatticePoint> neighbors(const LatticePoint& p) {
  std::vector<LatticePoint> out;
  out.reserve(2 * p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    out.push_back(p.with(i, p[i] + 1));
    out.push_back(p.with(i, p[i] - 1));
  }
  return out;
}

Path::Path(std::vector<LatticePoint> points) : points_(std::move(points)), trace_(points_) {
  std::sort(trace_.begin(), trace_.end());
  trace_.erase(std::unique(trace_.begin(), trace_.end()), trace_.end());
}

bool Path::contains(const LatticePoint& p) const {
  return std::binary_search(trace_.begin(), trace_.end(), p);
}

Path validate_path(std::vector<LatticePoint> points) {
  if (points.empty()) throw InvalidArgument("path must contain at least one point");
  const std::size_t d = points.front().dim();
  if (d == 0) throw DimensionMismatch("points must have dimension >= 1");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].dim() != d) {
      throw DimensionMismatch("point " + std::to_string(k) + " has dimension " +
                              std::to_string(points[k].dim()) + ", expected " + std::to_string(d));
    }
    for (Coord c : points[k].coords()) {
      if (c > kCoordLimit || c < -kCoordLimit) {
        throw CoordinateOutOfRange("point " + std::to_string(k) + " exceeds the coordinate bound");
      }
    }
    if (k > 0 && l1_distance(points[k - 1], points[k]) != 1) throw NotNearestNeighbor(k);
  }
  return Path(std::move(points));
}

bool connects_origin_to_sphere(const Path& path, Coord radius) {
  if (radius < 1 || !path.front().is_origin()) return false;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (path[k].l1_norm() == radius) return false;
  }
  return path.back().l1_norm() == radius;
}

Path staircase_path(std::size_t n, std::size_t d) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  std::vector<LatticePoint> pts;
  pts.reserve(n + 1);
  std::vector<Coord> c(d, 0);
  pts.emplace_back(c);
  for (std::size_t t = 1; t <= n; ++t) {
    ++c[(t - 1) % d];
    pts.emplace_back(c);
  }
  return validate_path(std::move(pts));
}

Path straight_path(std::size_t n, std::size_t d) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  std::vector<LatticePoint> pts;
  pts.reserve(n + 1);
  for (std::size_t t = 0; t <= n; ++t) pts.push_back(LatticePoint::origin(d).with(0, static_cast<Coord>(t)));
  return validate_path(std::move(pts));
}

std::vector<Path> monotone_path_classes(std::size_t n, std::size_t d) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  if (n > 12) throw TooLarge("at most 12 steps");
  std::vector<Path> out;
  std::vector<std::size_t> axes(n, 0);
  // Restricted growth strings: axes[t] <= 1 + max(axes[0..t-1]), below d.
  auto emit = [&] {
    std::vector<LatticePoint> pts{LatticePoint::origin(d)};
    for (std::size_t a : axes) pts.push_back(pts.back().with(a, pts.back()[a] + 1));
    out.push_back(validate_path(std::move(pts)));
  };
  auto recurse = [&](auto& self, std::size_t t, std::size_t used) -> void {
    if (t == n) {
      emit();
      return;
    }
    for (std::size_t a = 0; a <= used && a < d; ++a) {
      axes[t] = a;
      self(self, t + 1, std::max(used, a + 1));
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

std::uint64_t total_difference(const Path& path) {
  std::uint64_t total = 0;
  for (const LatticePoint& p : path.trace()) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      for (std::size_t j = i + 1; j < p.dim(); ++j) total += static_cast<std::uint64_t>(std::llabs(p[i] - p[j]));
    }
  }
  return total;
}

RepetitionProfile::RepetitionProfile(std::map<LatticePoint, std::size_t> counts) : counts_(std::move(counts)) {
  for (const auto& [p, n] : counts_) {
    if (n == 0) throw InvalidArgument("repetition counts must be positive");
    total_ += n;
  }
}

std::size_t RepetitionProfile::count(const LatticePoint& p) const {
  auto it = counts_.find(p);
  return it == counts_.end() ? 0 : it->second;
}

RepetitionProfile repetition_profile(const Path& path) {
  std::map<LatticePoint, std::size_t> counts;
  for (const LatticePoint& p : path) ++counts[p];
  return RepetitionProfile(std::move(counts));
}

std::string to_string(CoverMode mode) { return mode == CoverMode::Trace ? "trace" : "repetitions"; }

CoverMode parse_cover_mode(const std::string& text) {
  if (text == "trace") return CoverMode::Trace;
  if (text == "repetitions" || text == "reps") return CoverMode::Repetitions;
  throw InvalidArgument("unknown cover mode '" + text + "' (expected trace or repetitions)");
}

CoverTarget::CoverTarget(CoverMode mode, std::vector<LatticePoint> points, std::vector<std::uint32_t> required)
    : mode_(mode), points_(std::move(points)), required_(std::move(required)) {
  for (const LatticePoint& p : points_) {
    if (p.dim() != points_.front().dim()) throw DimensionMismatch("target points differ in dimension");
  }
}

CoverTarget CoverTarget::of_points(std::vector<LatticePoint> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<std::uint32_t> required(points.size(), 1);
  return CoverTarget(CoverMode::Trace, std::move(points), std::move(required));
}

CoverTarget CoverTarget::of_path(const Path& path, CoverMode mode) {
  if (mode == CoverMode::Trace) return of_points(path.trace());
  return of_profile(repetition_profile(path));
}

CoverTarget CoverTarget::of_profile(const RepetitionProfile& profile) {
  std::vector<LatticePoint> points;
  std::vector<std::uint32_t> required;
  for (const auto& [p, n] : profile.counts()) {
    points.push_back(p);
    required.push_back(static_cast<std::uint32_t>(n));
  }
  return CoverTarget(CoverMode::Repetitions, std::move(points), std::move(required));
}

RepetitionProfile CoverTarget::profile() const {
  if (mode_ != CoverMode::Repetitions) throw InvalidArgument("trace targets carry no repetition profile");
  std::map<LatticePoint, std::size_t> counts;
  for (std::size_t k = 0; k < points_.size(); ++k) counts.emplace(points_[k], required_[k]);
  return RepetitionProfile(std::move(counts));
}

}  // namespace walkcover
