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

#include "walkcover/reflect.hpp"

#include <algorithm>

#include "walkcover/errors.hpp"

namespace walkcover {

namespace {

void check_axes(const Hyperplane& h, std::size_t d) {
  if (std::max(h.first, h.second) >= d) throw DimensionMismatch("hyperplane axis exceeds point dimension");
}

// -1 when the origin has negative gap, +1 when positive; an origin on the
// plane is assigned the negative side.
int origin_side_sign(const Hyperplane& h) { return h.offset >= 0 ? -1 : 1; }

std::vector<LatticePoint> reflect_all(const std::vector<LatticePoint>& pts, const Hyperplane& h) {
  std::vector<LatticePoint> out;
  out.reserve(pts.size());
  for (const LatticePoint& p : pts) out.push_back(reflect_point(p, h));
  return out;
}

bool arc_on_origin_side(const std::vector<LatticePoint>& arc, const Hyperplane& h) {
  return std::all_of(arc.begin(), arc.end(), [&](const LatticePoint& p) { return h.on_origin_side(p); });
}

Path reassemble(const ArcDecomposition& dec) {
  std::vector<LatticePoint> pts = dec.prefix;
  for (const auto& arc : dec.arcs) pts.insert(pts.end(), arc.begin(), arc.end());
  return validate_path(std::move(pts));
}

}  // namespace

Hyperplane::Hyperplane(std::size_t first_axis, std::size_t second_axis, Coord off)
    : first(first_axis), second(second_axis), offset(off) {
  if (first == second) throw InvalidArgument("hyperplane axes must differ");
}

Coord Hyperplane::signed_gap(const LatticePoint& p) const {
  check_axes(*this, p.dim());
  return p[first] - p[second] - offset;
}

bool Hyperplane::on_origin_side(const LatticePoint& p) const {
  const Coord gap = signed_gap(p);
  return gap == 0 || (gap < 0) == (origin_side_sign(*this) < 0);
}

SignVector::SignVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  for (std::int8_t s : signs_) {
    if (s != 1 && s != -1) throw InvalidArgument("sign vector entries must be +1 or -1");
  }
}

LatticePoint reflect_point(const LatticePoint& p, const Hyperplane& h) {
  check_axes(h, p.dim());
  const Coord a = p[h.first];
  const Coord b = p[h.second];
  return p.with(h.first, b + h.offset).with(h.second, a - h.offset);
}

ArcDecomposition arc_decompose(const Path& path, const Hyperplane& h) {
  ArcDecomposition dec;
  for (std::size_t n = 0; n < path.size(); ++n) {
    if (h.contains(path[n])) dec.visit_times.push_back(n);
  }
  const std::size_t first_visit = dec.visit_times.empty() ? path.size() : dec.visit_times.front();
  dec.prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(first_visit));
  for (std::size_t k = 0; k < dec.visit_times.size(); ++k) {
    const std::size_t stop = k + 1 < dec.visit_times.size() ? dec.visit_times[k + 1] : path.size();
    dec.arcs.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(dec.visit_times[k]),
                          path.begin() + static_cast<std::ptrdiff_t>(stop));
  }
  return dec;
}

Path apply_configuration(const Path& path, const Hyperplane& h, const SignVector& signs) {
  ArcDecomposition dec = arc_decompose(path, h);
  if (signs.size() < dec.arcs.size()) {
    throw SignVectorTooShort("sign vector has " + std::to_string(signs.size()) + " entries but the path has " +
                             std::to_string(dec.arcs.size()) + " arcs");
  }
  for (std::size_t k = 0; k < dec.arcs.size(); ++k) {
    if (signs[k] == -1) dec.arcs[k] = reflect_all(dec.arcs[k], h);
  }
  return reassemble(dec);
}

std::pair<Path, SignVector> canonical_representative(const Path& path, const Hyperplane& h) {
  ArcDecomposition dec = arc_decompose(path, h);
  std::vector<std::int8_t> signs(dec.arcs.size(), 1);
  for (std::size_t k = 0; k < dec.arcs.size(); ++k) {
    if (!arc_on_origin_side(dec.arcs[k], h)) {
      dec.arcs[k] = reflect_all(dec.arcs[k], h);
      signs[k] = -1;
    }
  }
  return {reassemble(dec), SignVector(std::move(signs))};
}

std::size_t nontrivial_arc_count(const Path& path, const Hyperplane& h) {
  const ArcDecomposition dec = arc_decompose(path, h);
  return static_cast<std::size_t>(std::count_if(dec.arcs.begin(), dec.arcs.end(), [](const auto& arc) {
    return std::any_of(arc.begin(), arc.end(), [&](const LatticePoint& p) { return p != arc.front(); });
  }));
}

Path normalize_to_positive_orthant(const Path& path) {
  const LatticePoint& end = path.back();
  std::vector<LatticePoint> pts;
  pts.reserve(path.size());
  for (const LatticePoint& p : path) {
    std::vector<Coord> c(p.coords().begin(), p.coords().end());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (end[i] < 0) c[i] = -c[i];
    }
    pts.emplace_back(std::move(c));
  }
  return validate_path(std::move(pts));
}

std::vector<ReductionStep> reduce_path(const Path& path) {
  const Coord radius = path.back().l1_norm();
  if (!connects_origin_to_sphere(path, radius)) {
    throw NotConnecting("path must start at the origin and first reach its endpoint's L1 sphere at the last step");
  }
  for (Coord c : path.back().coords()) {
    if (c < 0) throw NotConnecting("endpoint must lie in the closed positive orthant");
  }

  const std::size_t d = path.dim();
  std::vector<ReductionStep> chain;
  Path current = path;

  // Pull every trace point into the band |a_i - a_j| <= 1.
  for (;;) {
    bool fired = false;
    for (std::size_t i = 0; i < d && !fired; ++i) {
      for (std::size_t j = 0; j < d && !fired; ++j) {
        if (i == j) continue;
        const bool far = std::any_of(current.trace().begin(), current.trace().end(),
                                     [&](const LatticePoint& p) { return p[i] - p[j] >= 2; });
        if (!far) continue;
        const Hyperplane h(i, j, 1);
        current = canonical_representative(current, h).first;
        chain.push_back({h, current});
        fired = true;
      }
    }
    if (!fired) break;
  }

  // Sort coordinates into nonincreasing order, one axis pair at a time.
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const Hyperplane h(j, i, 0);
      Path next = canonical_representative(current, h).first;
      if (next != current) {
        current = std::move(next);
        chain.push_back({h, current});
      }
    }
  }
  return chain;
}

}  // namespace walkcover
