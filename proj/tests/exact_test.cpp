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

#include <gtest/gtest.h>

#include "support.hpp"
#include "walkcover/errors.hpp"

namespace walkcover {
namespace {

TEST(Exact, SmallValues) {
  const ExactResult one = exact_cover_probability(CoverTarget::of_points({{1, 0}}), 2, 1);
  EXPECT_EQ(one.favorable, 1);
  EXPECT_EQ(one.total, 4);
  EXPECT_EQ(one.probability(), Rational(1, 4));
  for (std::size_t d = 1; d <= 4; ++d) {
    const ExactResult start = exact_cover_probability(CoverTarget::of_points({LatticePoint::origin(d)}), d, 0);
    EXPECT_EQ(start.probability(), 1);
  }
  EXPECT_EQ(exact_cover_probability(CoverTarget::of_points({{1}, {-1}}), 1, 2).favorable, 0);
  EXPECT_EQ(exact_cover_probability(CoverTarget::of_points({{1}, {-1}}), 1, 3).favorable, 2);
  EXPECT_EQ(walk_count(3, 4), 1296);
}

TEST(Exact, Errors) {
  EXPECT_THROW(exact_cover_probability(CoverTarget::of_points({{1, 0}}), 2, 15), BudgetExceeded);
  EXPECT_THROW(exact_cover_probability(CoverTarget::of_points({{1, 0}}), 3, 2), DimensionMismatch);
  EXPECT_THROW(check_budget(0, 1), InvalidArgument);
  EXPECT_NO_THROW(check_budget(2, 14));
}

TEST(Exact, MatchesIndependentEnumeration) {
  testing::Gen gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = static_cast<std::size_t>(gen.between(1, 3));
    const std::size_t steps = static_cast<std::size_t>(gen.between(0, d == 3 ? 5 : 7));
    CoverTarget target = CoverTarget::of_points(
        gen.distinct_points(d, 2, static_cast<std::size_t>(gen.between(1, 3))));
    if (gen.coin()) {
      const Path p = gen.walk(LatticePoint::origin(d), static_cast<std::size_t>(gen.between(1, 4)));
      target = CoverTarget::of_path(p, gen.coin() ? CoverMode::Repetitions : CoverMode::Trace);
    }
    const ExactResult r = exact_cover_probability(target, d, steps, 1);
    EXPECT_EQ(r.favorable, testing::brute_force_cover(target, d, steps)) << "d=" << d << " L=" << steps;
    EXPECT_EQ(r.total, walk_count(d, steps));
    EXPECT_EQ(exact_cover_probability(target, d, steps, 3).favorable, r.favorable);
  }
}

TEST(Exact, MonotoneInLengthAndRepetitionsBelowTrace) {
  testing::Gen gen(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Path p = gen.walk(LatticePoint::origin(2), static_cast<std::size_t>(gen.between(1, 5)));
    Rational previous = 0;
    for (std::size_t steps = 0; steps <= 8; ++steps) {
      const Rational trace = exact_cover_probability(CoverTarget::of_path(p, CoverMode::Trace), 2, steps).probability();
      const Rational reps =
          exact_cover_probability(CoverTarget::of_path(p, CoverMode::Repetitions), 2, steps).probability();
      EXPECT_GE(trace, previous);
      EXPECT_LE(reps, trace);
      previous = trace;
    }
  }
}

TEST(ReflectedPair, Examples) {
  const Hyperplane h(0, 1, 1);
  const ReflectedPairCounts none = count_reflected_pair({{1, 1}}, {}, h, 2, 5);
  EXPECT_EQ(none.covering_original, none.covering_reflected);

  const ReflectedPairCounts a = count_reflected_pair({}, {{0, 1}}, h, 2, 2);
  EXPECT_EQ(a.total, 16);
  // (0,1) mirrors to (2,-1), out of reach in two steps.
  EXPECT_EQ(a.covering_original, 4);
  EXPECT_EQ(a.covering_reflected, 0);

  const ReflectedPairCounts b = count_reflected_pair({{1, 1}}, {{0, 1}}, h, 2, 4);
  EXPECT_EQ(b.total, 256);
  EXPECT_GE(b.covering_original, b.covering_reflected);
  EXPECT_EQ(b.covering_original, testing::brute_force_cover(CoverTarget::of_points({{1, 1}, {0, 1}}), 2, 4));
  EXPECT_EQ(b.covering_reflected, testing::brute_force_cover(CoverTarget::of_points({{1, 1}, {2, -1}}), 2, 4));
}

TEST(ReflectedPair, Errors) {
  const Hyperplane h(0, 1, 1);
  EXPECT_THROW(count_reflected_pair({{3, 0}}, {}, h, 2, 3), SideViolation);
  EXPECT_THROW(count_reflected_pair({}, {{2, 0}}, h, 2, 3), SideViolation);
  EXPECT_THROW(count_reflected_pair({{0, 1}}, {{0, 1}}, h, 2, 3), InvalidArgument);
  EXPECT_THROW(count_reflected_pair({}, {{0, 1}}, h, 2, 20), BudgetExceeded);
}

TEST(ReflectedPair, ExhaustiveSweepHasNoViolations) {
  const ReflectionSweepReport r = sweep_reflected_pairs(Hyperplane(0, 1, 1), 2, 6, 2, 2, 1);
  EXPECT_EQ(r.violations, 0U);
  EXPECT_FALSE(r.first_violation.has_value());
  // Points of the 5x5 box with x <= y + 1.
  EXPECT_EQ(r.candidate_points, 19U);
  const std::uint64_t subsets = 1 + 19 + 19 * 18 / 2;
  EXPECT_EQ(r.pairs, subsets * subsets - [] {
    // Ordered pairs of subsets of size <= 2 sharing an element.
    std::uint64_t overlapping = 0;
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        // choose(19,a)*choose(19,b) minus disjoint pairs.
        const auto choose = [](int n, int k) -> std::uint64_t {
          return k == 0 ? 1 : k == 1 ? static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n * (n - 1) / 2);
        };
        overlapping += choose(19, a) * choose(19, b) - choose(19, a) * choose(19 - a, b);
      }
    }
    return overlapping;
  }());
  EXPECT_EQ(r.checks, r.pairs * 7);
  EXPECT_GT(r.strict, 0U);
  EXPECT_THROW(sweep_reflected_pairs(Hyperplane(0, 1, 1), 2, 4, 2, 4, 1), TooLarge);
}

TEST(ClassRefinement, SignCountsMatchDirectCountsPerClass) {
  struct Case {
    std::vector<LatticePoint> a0;
    std::vector<LatticePoint> b0;
    Hyperplane h;
    std::size_t steps;
  };
  const std::vector<Case> cases{
      {{{1, 1}}, {{0, 1}}, Hyperplane(0, 1, 1), 6},
      {{}, {{0, 1}, {-1, 0}}, Hyperplane(0, 1, 1), 5},
      {{{0, 1}}, {{1, 2}}, Hyperplane(0, 1, 0), 6},
      {{{-1, 0}, {1, 0}}, {{0, 1}}, Hyperplane(0, 1, 1), 6},
      {{{0, 0, 1}}, {{0, 1, 0}}, Hyperplane(0, 1, 1), 4},
  };
  for (const Case& c : cases) {
    const std::size_t d = c.a0.empty() ? c.b0.front().dim() : c.a0.front().dim();
    const std::vector<ClassCounts> classes = class_refinement(c.a0, c.b0, c.h, d, c.steps);
    std::uint64_t members = 0;
    std::uint64_t original = 0;
    std::uint64_t reflected = 0;
    for (const ClassCounts& cc : classes) {
      EXPECT_EQ(cc.members, std::uint64_t{1} << cc.nontrivial_arcs);
      EXPECT_EQ(cc.comb_original, cc.direct_original) << to_string(cc.representative.back());
      EXPECT_EQ(cc.comb_reflected, cc.direct_reflected);
      EXPECT_GE(cc.comb_original, cc.comb_reflected);
      members += cc.members;
      original += cc.direct_original;
      reflected += cc.direct_reflected;
    }
    const ReflectedPairCounts whole = count_reflected_pair(c.a0, c.b0, c.h, d, c.steps);
    EXPECT_EQ(members, walk_count(d, c.steps));
    EXPECT_EQ(original, whole.covering_original);
    EXPECT_EQ(reflected, whole.covering_reflected);
  }
  EXPECT_THROW(class_refinement({}, {{0, 1}}, Hyperplane(0, 1, 1), 2, 11), BudgetExceeded);
}

TEST(Staircase, SmallCases) {
  const StaircaseReport two = verify_staircase_max(2, 2, 6, 4);
  EXPECT_TRUE(two.staircase_is_max);
  EXPECT_EQ(two.staircase_rank, 1U);
  ASSERT_FALSE(two.rows.empty());
  for (std::size_t k = 1; k < two.rows.size(); ++k) EXPECT_GE(two.rows[k - 1].favorable, two.rows[k].favorable);
  for (const StaircaseRow& row : two.rows) {
    EXPECT_EQ(row.favorable, exact_cover_probability(CoverTarget::of_points(row.trace), 2, 6).favorable);
  }

  for (std::size_t d = 1; d <= 3; ++d) {
    const StaircaseReport one = verify_staircase_max(1, d, 3, 2);
    ASSERT_EQ(one.rows.size(), 2 * d);
    for (const StaircaseRow& row : one.rows) EXPECT_EQ(row.favorable, one.rows.front().favorable);
    EXPECT_TRUE(one.staircase_is_max);
  }

  EXPECT_THROW(verify_staircase_max(0, 2, 3, 3), InvalidArgument);
  EXPECT_THROW(verify_staircase_max(4, 2, 3, 6), InvalidArgument);
  EXPECT_THROW(verify_staircase_max(2, 2, 3, 2), InvalidArgument);
}

TEST(Staircase, MonotoneRepresentativesInThreeDimensions) {
  const StaircaseReport r = verify_staircase_max(3, 3, 6, 4);
  EXPECT_TRUE(r.staircase_is_max);
  const auto favorable = [&](const Path& p) {
    for (const StaircaseRow& row : r.rows) {
      if (row.trace == p.trace()) return row.favorable;
    }
    ADD_FAILURE() << "path missing from the table";
    return BigInt(0);
  };
  const std::vector<Path> classes = monotone_path_classes(3, 3);
  ASSERT_EQ(classes.size(), 5U);
  for (const Path& p : classes) EXPECT_LE(favorable(p), favorable(classes.back()));
  for (const Path& p : classes) EXPECT_GE(favorable(p), favorable(classes.front()));
}

}  // namespace
}  // namespace walkcover
