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

#include "walkcover/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "walkcover/errors.hpp"

namespace walkcover {

namespace {

double max_error(const std::vector<BoundedValue>& v) {
  double m = 0.0;
  for (const BoundedValue& x : v) m = std::max(m, x.abs_error_bound);
  return m;
}

// Solves A x = b (n x n, row-major) with partial pivoting and bounds the
// effect of the entry errors through the computed inverse.
std::vector<BoundedValue> solve_bounded(const std::vector<BoundedValue>& a, const std::vector<BoundedValue>& b) {
  const std::size_t n = b.size();
  std::vector<double> m(n * n);
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n * n; ++i) m[i] = a[i].value;
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r * n + c]) > std::abs(m[pivot * n + c])) pivot = r;
    }
    if (!(std::abs(m[pivot * n + c]) > 1e-13 * scale)) {
      throw SingularSystem("Green matrix is numerically singular; the quadrature error may be too large");
    }
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m[c * n + k], m[pivot * n + k]);
        std::swap(inv[c * n + k], inv[pivot * n + k]);
      }
    }
    const double p = m[c * n + c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c * n + k] /= p;
      inv[c * n + k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r * n + c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r * n + k] -= f * m[c * n + k];
        inv[r * n + k] -= f * inv[c * n + k];
      }
    }
  }
  std::vector<double> x(n, 0.0);
  double inv_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      x[i] += inv[i * n + j] * b[j].value;
      row += std::abs(inv[i * n + j]);
    }
    inv_norm = std::max(inv_norm, row);
  }
  double x_norm = 0.0;
  for (double v : x) x_norm = std::max(x_norm, std::abs(v));
  const double da = static_cast<double>(n) * max_error(a);
  const double db = max_error(b);
  const double shrink = 1.0 - inv_norm * da;
  if (!(shrink > 0.0)) throw SingularSystem("Green matrix errors are too large to bound the solution");
  const double err = inv_norm * (da * x_norm + db) / shrink + 1e-15 * inv_norm * x_norm;
  std::vector<BoundedValue> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {x[i], err};
  return out;
}

void check_set(const HittingQuery& q) {
  if (q.set.empty()) throw InvalidArgument("hitting set must be nonempty");
  const std::size_t d = q.start.dim();
  if (d < 3) throw RecurrentWalk("hitting probabilities need a transient walk (d >= 3)");
  for (const LatticePoint& s : q.set) {
    if (s.dim() != d) throw DimensionMismatch("hitting set point dimension differs from the start point");
  }
  std::vector<LatticePoint> sorted = q.set;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("hitting set points must be distinct");
  }
}

std::vector<BoundedValue> green_matrix(const std::vector<LatticePoint>& set, double tol) {
  const std::size_t n = set.size();
  const WalkSpectrum spec = WalkSpectrum::simple(set.front().dim());
  std::vector<BoundedValue> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const GreenValue g = green_value(spec, set[i] - set[j], tol);
      a[i * n + j] = a[j * n + i] = {g.value, g.abs_error_bound};
    }
  }
  return a;
}

FirstEntry first_entry_off_set(const LatticePoint& start, const std::vector<LatticePoint>& set, double tol) {
  const WalkSpectrum spec = WalkSpectrum::simple(start.dim());
  std::vector<BoundedValue> b;
  for (const LatticePoint& s : set) {
    const GreenValue g = green_value(spec, s - start, tol);
    b.push_back({g.value, g.abs_error_bound});
  }
  FirstEntry out;
  out.probability = solve_bounded(green_matrix(set, tol), b);
  for (const BoundedValue& p : out.probability) out.total = out.total + p;
  return out;
}

}  // namespace

FirstEntry first_entry_distribution(const HittingQuery& q, double tol) {
  check_set(q);
  const auto on_set = std::find(q.set.begin(), q.set.end(), q.start);
  if (on_set == q.set.end()) return first_entry_off_set(q.start, q.set, tol);

  // Condition on the first step.
  const std::size_t n = q.set.size();
  const double share = 1.0 / static_cast<double>(2 * q.start.dim());
  FirstEntry out;
  out.probability.assign(n, BoundedValue{});
  for (const LatticePoint& nb : neighbors(q.start)) {
    const auto hit = std::find(q.set.begin(), q.set.end(), nb);
    if (hit != q.set.end()) {
      out.probability[static_cast<std::size_t>(hit - q.set.begin())].value += share;
      continue;
    }
    const FirstEntry sub = first_entry_off_set(nb, q.set, tol);
    for (std::size_t i = 0; i < n; ++i) out.probability[i] = out.probability[i] + share * sub.probability[i];
  }
  for (const BoundedValue& p : out.probability) out.total = out.total + p;
  return out;
}

CompletionCalculator::CompletionCalculator(std::size_t d, std::vector<LatticePoint> sites, double tol)
    : d_(d), sites_(std::move(sites)), tol_(tol) {
  if (d < 3) throw RecurrentWalk("completion probabilities need a transient walk (d >= 3)");
  if (sites_.empty()) throw InvalidArgument("no sites");
  check_set(HittingQuery{LatticePoint::origin(d), sites_});
}

std::vector<double> CompletionCalculator::entry(const LatticePoint& from, const std::vector<std::size_t>& support) {
  std::vector<LatticePoint> set;
  for (std::size_t i : support) set.push_back(sites_[i]);
  bool far = d_ == 3;
  for (const LatticePoint& s : set) {
    if (!far) break;
    double r2 = 0.0;
    for (std::size_t a = 0; a < d_; ++a) {
      const double diff = static_cast<double>(s[a] - from[a]);
      r2 += diff * diff;
    }
    far = r2 >= kFarFieldRadius * kFarFieldRadius;
  }
  std::vector<double> out;
  if (far) {
    std::vector<BoundedValue> b;
    for (const LatticePoint& s : set) b.push_back(green_far_field(s - from));
    for (const BoundedValue& p : solve_bounded(green_matrix(set, tol_), b)) out.push_back(p.value);
  } else {
    for (const BoundedValue& p : first_entry_distribution(HittingQuery{from, set}, tol_).probability) {
      out.push_back(p.value);
    }
  }
  return out;
}

std::vector<double> CompletionCalculator::first_entry(const LatticePoint& from) {
  if (from.dim() != d_) throw DimensionMismatch("start point dimension differs from the sites");
  std::vector<std::size_t> all(sites_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return entry(from, all);
}

double CompletionCalculator::probability(const LatticePoint& from, std::span<const std::uint32_t> outstanding) {
  if (from.dim() != d_) throw DimensionMismatch("start point dimension differs from the sites");
  if (outstanding.size() != sites_.size()) throw LengthMismatch("one outstanding count per site is required");
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < outstanding.size(); ++i) {
    if (outstanding[i] > 0) support.push_back(i);
  }
  if (support.empty()) return 1.0;
  const std::vector<double> fe = entry(from, support);
  double total = 0.0;
  std::vector<std::uint32_t> rest(outstanding.begin(), outstanding.end());
  for (std::size_t u = 0; u < support.size(); ++u) {
    --rest[support[u]];
    total += fe[u] * from_site(support[u], rest);
    ++rest[support[u]];
  }
  return total;
}

double CompletionCalculator::from_site(std::size_t site, const std::vector<std::uint32_t>& outstanding) {
  auto key = std::make_pair(site, outstanding);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  const double value = probability(sites_[site], outstanding);
  std::lock_guard lock(mutex_);
  memo_.emplace(std::move(key), value);
  return value;
}

CounterexampleReport counterexample_probabilities(double tol) {
  const LatticePoint o{0, 0, 0};
  const LatticePoint y{1, 0, 0};
  const LatticePoint w{1, 1, 0};
  const LatticePoint z{0, 1, 0};
  const WalkSpectrum spec = WalkSpectrum::simple(3);
  auto bounded = [](const GreenValue& g) { return BoundedValue{g.value, g.abs_error_bound}; };

  CounterexampleReport r;
  r.green_origin = bounded(green_value(spec, o, tol));
  r.hit_y = bounded(green_value(spec, y, tol)) / r.green_origin;
  r.hit_w = bounded(green_value(spec, w, tol)) / r.green_origin;
  r.return_o = BoundedValue{1.0, 0.0} - BoundedValue{1.0, 0.0} / r.green_origin;

  const FirstEntry yz = first_entry_distribution({o, {y, z}}, tol);
  const FirstEntry yzw = first_entry_distribution({o, {y, z, w}}, tol);
  const FirstEntry yw = first_entry_distribution({o, {y, w}}, tol);
  const FirstEntry oy = first_entry_distribution({o, {o, y}}, tol);
  r.yz_first_y = yz.probability[0];
  r.yzw_first_y = yzw.probability[0];
  r.yzw_first_w = yzw.probability[2];
  r.yw_first_y = yw.probability[0];
  r.yw_first_w = yw.probability[1];
  r.oy_first_o = oy.probability[0];
  r.oy_first_y = oy.probability[1];

  // (o,y,w,z): the first of y, z (symmetric) or w reached, then the rest.
  // Entering the square at y leaves w and z, which from y look like y and w
  // from o; after both, the last point is a neighbour of the current one.
  const BoundedValue via_side = 2.0 * r.yzw_first_y * (r.yw_first_y + r.yw_first_w) * r.hit_y;
  // Entering at w leaves y and z, both neighbours of w; whichever comes
  // second sits diagonally from the first.
  const BoundedValue via_corner = 2.0 * r.yzw_first_w * r.yz_first_y;
  r.p1 = via_side + via_corner * r.hit_w;
  r.p1_alt = via_side + via_corner * r.hit_y;

  // (o,y,w,y) with repetitions: y twice and w once.
  r.p2 = r.yw_first_y * (r.oy_first_o + r.oy_first_y) * r.hit_y + r.yw_first_w * r.hit_y * r.return_o;
  r.p1_exceeds_p2 = r.p1.value - r.p1.abs_error_bound > r.p2.value + r.p2.abs_error_bound;

  std::ostringstream notes;
  notes.precision(6);
  notes << "p1 ends its corner term with P(ever visit w) = " << r.hit_w.value
        << ", the chance of reaching the diagonal point; ending it with P(ever visit y) = " << r.hit_y.value
        << " instead gives p1_alt = " << r.p1_alt.value << ".";
  r.notes = notes.str();
  return r;
}

}  // namespace walkcover
