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

#include "walkcover/exact.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "target_index.hpp"
#include "walkcover/census.hpp"
#include "walkcover/comb.hpp"
#include "walkcover/errors.hpp"
#include "walkcover/parallel.hpp"

namespace walkcover {

namespace {

// Depth-first count of walk continuations that complete the target.
class CoverSearch {
 public:
  CoverSearch(const CoverTarget& target, std::size_t d, std::size_t steps)
      : d_(d), index_(target.points(), d), need_(target.required()), pos_(d, 0), powers_(steps + 1, 1) {
    for (const LatticePoint& p : target.points()) targets_.insert(targets_.end(), p.coords().begin(), p.coords().end());
    for (std::size_t r = 1; r <= steps; ++r) powers_[r] = powers_[r - 1] * (2 * d);
    for (std::uint32_t n : need_) outstanding_ += n;
    visit();  // time 0
  }

  // Moves the walker one step; used to split the search tree.
  void step(std::size_t direction) {
    pos_[direction / 2] += direction % 2 ? -1 : 1;
    visit();
  }

  std::uint64_t count(std::size_t remaining) {
    if (outstanding_ == 0) return powers_[remaining];
    if (outstanding_ > remaining || !reachable(remaining)) return 0;
    std::uint64_t total = 0;
    for (std::size_t axis = 0; axis < d_; ++axis) {
      for (Coord delta : {Coord{1}, Coord{-1}}) {
        pos_[axis] += delta;
        const int k = index_.find(pos_.data());
        const bool hit = k >= 0 && need_[k] > 0;
        if (hit) {
          --need_[k];
          --outstanding_;
        }
        total += count(remaining - 1);
        if (hit) {
          ++need_[k];
          ++outstanding_;
        }
        pos_[axis] -= delta;
      }
    }
    return total;
  }

 private:
  void visit() {
    const int k = index_.find(pos_.data());
    if (k >= 0 && need_[k] > 0) {
      --need_[k];
      --outstanding_;
    }
  }

  // Each pending point must be reachable, with two extra steps per
  // additional revisit it still owes.
  bool reachable(std::size_t remaining) const {
    for (std::size_t k = 0; k < need_.size(); ++k) {
      if (need_[k] == 0) continue;
      Coord dist = 0;
      for (std::size_t i = 0; i < d_; ++i) {
        const Coord diff = targets_[k * d_ + i] - pos_[i];
        dist += diff < 0 ? -diff : diff;
      }
      if (static_cast<std::uint64_t>(dist) + 2 * (need_[k] - 1) > remaining) return false;
    }
    return true;
  }

  std::size_t d_;
  detail::TargetIndex index_;
  std::vector<std::uint32_t> need_;
  std::uint64_t outstanding_ = 0;
  std::vector<Coord> pos_;
  std::vector<Coord> targets_;
  std::vector<std::uint64_t> powers_;
};

void check_points(const std::vector<LatticePoint>& pts, std::size_t d) {
  for (const LatticePoint& p : pts) {
    if (p.dim() != d) throw DimensionMismatch("point " + to_string(p) + " does not have dimension " + std::to_string(d));
  }
}

std::vector<LatticePoint> merged(std::vector<LatticePoint> a, const std::vector<LatticePoint>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool walk_covers(const Path& walk, const std::vector<LatticePoint>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](const LatticePoint& p) { return walk.contains(p); });
}

std::uint64_t to_u64(const BigInt& v) { return static_cast<std::uint64_t>(v); }

}  // namespace

BigInt walk_count(std::size_t d, std::size_t steps) {
  BigInt total = 1;
  for (std::size_t k = 0; k < steps; ++k) total *= 2 * d;
  return total;
}

void check_budget(std::size_t d, std::size_t steps, std::uint64_t budget) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  if (walk_count(d, steps) > budget) {
    throw BudgetExceeded("(2d)^L = (" + std::to_string(2 * d) + ")^" + std::to_string(steps) +
                         " exceeds the enumeration budget of " + std::to_string(budget));
  }
}

ExactResult exact_cover_probability(const CoverTarget& target, std::size_t d, std::size_t steps, unsigned threads) {
  check_budget(d, steps);
  check_points(target.points(), d);
  ExactResult result{0, walk_count(d, steps)};
  if (steps == 0) {
    result.favorable = CoverSearch(target, d, 0).count(0);
    return result;
  }
  std::vector<std::uint64_t> partial(2 * d, 0);
  parallel_for(2 * d, threads, [&](std::size_t direction) {
    CoverSearch search(target, d, steps);
    search.step(direction);
    partial[direction] = search.count(steps - 1);
  });
  for (std::uint64_t c : partial) result.favorable += c;
  return result;
}

ReflectedPairCounts count_reflected_pair(const std::vector<LatticePoint>& a0, const std::vector<LatticePoint>& b0,
                                         const Hyperplane& h, std::size_t d, std::size_t steps, unsigned threads) {
  check_points(a0, d);
  check_points(b0, d);
  check_budget(d, steps);
  for (const auto* set : {&a0, &b0}) {
    for (const LatticePoint& p : *set) {
      if (!h.on_origin_side(p)) throw SideViolation("point " + to_string(p) + " lies beyond the hyperplane");
    }
  }
  for (const LatticePoint& p : a0) {
    if (std::find(b0.begin(), b0.end(), p) != b0.end()) {
      throw InvalidArgument("point " + to_string(p) + " appears in both sets");
    }
  }
  std::vector<LatticePoint> mirrored;
  for (const LatticePoint& p : b0) mirrored.push_back(reflect_point(p, h));

  ReflectedPairCounts out;
  out.covering_original = exact_cover_probability(CoverTarget::of_points(merged(a0, b0)), d, steps, threads).favorable;
  const ExactResult second = exact_cover_probability(CoverTarget::of_points(merged(a0, mirrored)), d, steps, threads);
  out.covering_reflected = second.favorable;
  out.total = second.total;
  return out;
}

StaircaseReport verify_staircase_max(std::size_t radius, std::size_t d, std::size_t steps, std::size_t max_points,
                                     unsigned threads) {
  if (radius < 1) throw InvalidArgument("radius must be >= 1");
  if (radius > steps) throw InvalidArgument("the walk length must be at least the radius");
  if (max_points < radius + 1) throw InvalidArgument("the path cap must allow at least radius + 1 points");
  check_budget(d, steps);

  // Enumerate connecting paths; only the final point reaches the sphere.
  std::map<std::vector<LatticePoint>, StaircaseRow> by_trace;
  std::vector<LatticePoint> current{LatticePoint::origin(d)};
  const auto r = static_cast<Coord>(radius);
  auto extend = [&](auto&& self) -> void {
    for (const LatticePoint& next : neighbors(current.back())) {
      current.push_back(next);
      if (next.l1_norm() == r) {
        Path path = validate_path(current);
        auto [it, inserted] = by_trace.try_emplace(path.trace(), StaircaseRow{path.trace(), path, 0, 0, false});
        ++it->second.path_count;
      } else if (current.size() < max_points) {
        self(self);
      }
      current.pop_back();
    }
  };
  extend(extend);

  StaircaseReport report{radius, d, steps, max_points, walk_count(d, steps), {}, 0, false};
  const std::vector<LatticePoint> stair = staircase_path(radius, d).trace();
  const std::vector<LatticePoint> ball = l1_ball(d, r);
  if (ball.size() <= 64) {
    const TraceCensus census(ball, d, steps, threads);
    for (auto& [trace, row] : by_trace) row.favorable = census.favorable(census.mask_of(trace), steps);
  } else {
    for (auto& [trace, row] : by_trace) {
      row.favorable = exact_cover_probability(CoverTarget::of_points(trace), d, steps, threads).favorable;
    }
  }
  for (auto& [trace, row] : by_trace) {
    row.is_staircase = trace == stair;
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const StaircaseRow& a, const StaircaseRow& b) { return a.favorable > b.favorable; });
  const auto stair_row = std::find_if(report.rows.begin(), report.rows.end(), [](const auto& row) { return row.is_staircase; });
  if (stair_row != report.rows.end()) {
    report.staircase_rank = 1 + static_cast<std::size_t>(std::count_if(
                                    report.rows.begin(), report.rows.end(),
                                    [&](const StaircaseRow& row) { return row.favorable > stair_row->favorable; }));
    report.staircase_is_max = report.staircase_rank == 1;
  }
  return report;
}

ReflectionSweepReport sweep_reflected_pairs(const Hyperplane& h, std::size_t d, std::size_t max_steps,
                                            Coord box_radius, std::size_t max_set_size, unsigned threads) {
  check_budget(d, max_steps);
  if (max_set_size > 3) throw TooLarge("set size above 3 is not supported by the sweep");
  std::vector<LatticePoint> candidates;
  for (const LatticePoint& p : linf_box(d, box_radius)) {
    if (h.on_origin_side(p)) candidates.push_back(p);
  }
  std::vector<LatticePoint> window = candidates;
  for (const LatticePoint& p : candidates) window.push_back(reflect_point(p, h));
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  if (window.size() > 64) throw TooLarge("sweep window exceeds 64 points; shrink the box");
  const TraceCensus census(window, d, max_steps, threads);

  const std::size_t n = candidates.size();
  std::vector<std::uint64_t> plain(n);
  std::vector<std::uint64_t> mirror(n);
  for (std::size_t k = 0; k < n; ++k) {
    plain[k] = census.mask_of(std::span(&candidates[k], 1));
    const LatticePoint image = reflect_point(candidates[k], h);
    mirror[k] = census.mask_of(std::span(&image, 1));
  }

  // All subsets of candidate indices with at most max_set_size elements.
  std::vector<std::vector<std::size_t>> subsets{{}};
  for (std::size_t size = 1; size <= max_set_size; ++size) {
    std::vector<std::size_t> idx(size);
    auto rec = [&](auto&& self, std::size_t pos, std::size_t from) -> void {
      if (pos == size) {
        subsets.push_back(idx);
        return;
      }
      for (std::size_t k = from; k < n; ++k) {
        idx[pos] = k;
        self(self, pos + 1, k + 1);
      }
    };
    rec(rec, 0, 0);
  }

  ReflectionSweepReport report;
  report.max_steps = max_steps;
  report.candidate_points = n;
  for (const auto& a : subsets) {
    std::uint64_t mask_a = 0;
    for (std::size_t k : a) mask_a |= plain[k];
    for (const auto& b : subsets) {
      const bool overlap = std::any_of(b.begin(), b.end(), [&](std::size_t k) {
        return std::find(a.begin(), a.end(), k) != a.end();
      });
      if (overlap) continue;
      std::uint64_t mask_b = 0;
      std::uint64_t mask_mb = 0;
      for (std::size_t k : b) {
        mask_b |= plain[k];
        mask_mb |= mirror[k];
      }
      ++report.pairs;
      for (std::size_t steps = 0; steps <= max_steps; ++steps) {
        const std::uint64_t c1 = census.favorable(mask_a | mask_b, steps);
        const std::uint64_t c2 = census.favorable(mask_a | mask_mb, steps);
        ++report.checks;
        if (c1 > c2) ++report.strict;
        if (c1 < c2) {
          ++report.violations;
          if (!report.first_violation) {
            ReflectionViolation v;
            for (std::size_t k : a) v.a0.push_back(candidates[k]);
            for (std::size_t k : b) v.b0.push_back(candidates[k]);
            v.steps = steps;
            v.covering_original = c1;
            v.covering_reflected = c2;
            report.first_violation = std::move(v);
          }
        }
      }
    }
  }
  return report;
}

std::vector<ClassCounts> class_refinement(const std::vector<LatticePoint>& a0, const std::vector<LatticePoint>& b0,
                                          const Hyperplane& h, std::size_t d, std::size_t steps) {
  check_points(a0, d);
  check_points(b0, d);
  check_budget(d, steps, 1'000'000);
  for (const auto* set : {&a0, &b0}) {
    for (const LatticePoint& p : *set) {
      if (!h.on_origin_side(p)) throw SideViolation("point " + to_string(p) + " lies beyond the hyperplane");
    }
  }
  std::vector<LatticePoint> mirrored;
  for (const LatticePoint& p : b0) mirrored.push_back(reflect_point(p, h));
  const std::vector<LatticePoint> original_target = merged(a0, b0);
  const std::vector<LatticePoint> reflected_target = merged(a0, mirrored);

  std::map<Path, ClassCounts> classes;
  const std::uint64_t total = to_u64(walk_count(d, steps));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<LatticePoint> pts{LatticePoint::origin(d)};
    std::uint64_t rest = code;
    for (std::size_t s = 0; s < steps; ++s) {
      const std::size_t dir = rest % (2 * d);
      rest /= 2 * d;
      const LatticePoint& last = pts.back();
      pts.push_back(last.with(dir / 2, last[dir / 2] + (dir % 2 ? -1 : 1)));
    }
    const Path walk = validate_path(std::move(pts));
    Path rep = canonical_representative(walk, h).first;
    auto it = classes.find(rep);
    if (it == classes.end()) it = classes.emplace(rep, ClassCounts{rep}).first;
    ClassCounts& cc = it->second;
    ++cc.members;
    if (walk_covers(walk, original_target)) ++cc.direct_original;
    if (walk_covers(walk, reflected_target)) ++cc.direct_reflected;
  }

  std::vector<ClassCounts> out;
  for (auto& [rep, cc] : classes) {
    const ArcDecomposition dec = arc_decompose(rep, h);
    std::vector<std::vector<LatticePoint>> arcs;
    for (const auto& arc : dec.arcs) {
      std::vector<LatticePoint> t = arc;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      if (t.size() > 1) arcs.push_back(std::move(t));
    }
    cc.nontrivial_arcs = arcs.size();
    const auto in_prefix = [&](const LatticePoint& p) {
      return std::find(dec.prefix.begin(), dec.prefix.end(), p) != dec.prefix.end();
    };
    // Points on the hyperplane are fixed by every configuration.
    const bool fixed_ok = std::all_of(original_target.begin(), original_target.end(), [&](const LatticePoint& p) {
      return !h.contains(p) || rep.contains(p);
    });

    // Ground set for the original target: off-plane points outside the
    // prefix, all needing a kept arc. For the reflected target, the points
    // of B0 need a reflected arc even when the prefix already visits them.
    std::vector<LatticePoint> ground_original;
    std::vector<LatticePoint> ground_reflected;
    comb::Subset keep_mask = 0;
    for (const LatticePoint& p : a0) {
      if (h.contains(p) || in_prefix(p)) continue;
      ground_original.push_back(p);
      keep_mask |= comb::Subset{1} << ground_reflected.size();
      ground_reflected.push_back(p);
    }
    for (const LatticePoint& p : b0) {
      if (h.contains(p)) continue;
      if (!in_prefix(p)) ground_original.push_back(p);
      ground_reflected.push_back(p);
    }
    const auto count_for = [&](const std::vector<LatticePoint>& ground, std::optional<comb::Subset> target) {
      if (ground.empty()) return std::uint64_t{1} << arcs.size();
      std::vector<comb::Subset> sets;
      for (const auto& arc : arcs) {
        comb::Subset s = 0;
        for (std::size_t e = 0; e < ground.size(); ++e) {
          if (std::binary_search(arc.begin(), arc.end(), ground[e])) s |= comb::Subset{1} << e;
        }
        sets.push_back(s);
      }
      const comb::ArcCollection collection(comb::GroundSet(static_cast<unsigned>(ground.size())), std::move(sets));
      return comb::cover_count(collection, target.value_or(collection.ground().all()));
    };
    if (fixed_ok) {
      cc.comb_original = count_for(ground_original, std::nullopt);
      cc.comb_reflected = count_for(ground_reflected, keep_mask);
      cc.comb_all_positive = count_for(ground_reflected, std::nullopt);
    }
    out.push_back(std::move(cc));
  }
  return out;
}

}  // namespace walkcover
