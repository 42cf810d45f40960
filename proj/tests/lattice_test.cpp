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

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"
#include "walkcover/errors.hpp"

namespace walkcover {
namespace {

TEST(LatticePoint, ArithmeticAndOrdering) {
  const LatticePoint a{1, -2, 3};
  const LatticePoint b{0, 1, 1};
  EXPECT_EQ(a + b, (LatticePoint{1, -1, 4}));
  EXPECT_EQ(a - b, (LatticePoint{1, -3, 2}));
  EXPECT_EQ(-a, (LatticePoint{-1, 2, -3}));
  EXPECT_EQ(a.l1_norm(), 6);
  EXPECT_EQ(l1_distance(a, b), 6);
  EXPECT_TRUE(LatticePoint::origin(4).is_origin());
  EXPECT_EQ(LatticePoint::unit(3, 1, -1), (LatticePoint{0, -1, 0}));
  EXPECT_LT(b, a);
  EXPECT_EQ(to_string(a), "(1,-2,3)");
}

TEST(LatticePoint, NeighborsInAxisOrder) {
  const auto n = neighbors(LatticePoint{0, 0});
  ASSERT_EQ(n.size(), 4U);
  EXPECT_EQ(n[0], (LatticePoint{1, 0}));
  EXPECT_EQ(n[1], (LatticePoint{-1, 0}));
  EXPECT_EQ(n[2], (LatticePoint{0, 1}));
  EXPECT_EQ(n[3], (LatticePoint{0, -1}));
}

TEST(Path, RejectsMalformedInput) {
  EXPECT_THROW(validate_path({}), InvalidArgument);
  EXPECT_THROW(validate_path({{0, 0}, {1, 0, 0}}), DimensionMismatch);
  try {
    validate_path({{0, 0}, {1, 0}, {1, 1}, {2, 2}});
    FAIL() << "expected NotNearestNeighbor";
  } catch (const NotNearestNeighbor& e) {
    EXPECT_EQ(e.index(), 3U);
  }
  EXPECT_THROW(validate_path({{0, 0}, {0, 0}}), NotNearestNeighbor);
  EXPECT_THROW(validate_path({{kCoordLimit + 1, 0}}), CoordinateOutOfRange);
}

TEST(Path, TraceIsSortedDistinct) {
  const Path p = validate_path({{0, 0}, {1, 0}, {0, 0}, {0, 1}});
  EXPECT_EQ(p.size(), 4U);
  EXPECT_EQ(p.steps(), 3U);
  EXPECT_FALSE(p.is_simple());
  EXPECT_EQ(p.trace(), (std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_TRUE(p.contains({0, 1}));
  EXPECT_FALSE(p.contains({1, 1}));
}

TEST(Path, TraceMatchesPointSetOnRandomWalks) {
  testing::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(gen.between(1, 4));
    const Path p = gen.walk(LatticePoint::origin(d), static_cast<std::size_t>(gen.between(0, 30)));
    const std::set<LatticePoint> expected(p.begin(), p.end());
    EXPECT_EQ(p.trace(), std::vector<LatticePoint>(expected.begin(), expected.end()));
    for (const LatticePoint& q : p) EXPECT_TRUE(p.contains(q));
    EXPECT_EQ(p.is_simple(), expected.size() == p.size());
  }
}

TEST(Path, StaircaseShape) {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (std::size_t n = 0; n <= 12; ++n) {
      const Path s = staircase_path(n, d);
      ASSERT_EQ(s.size(), n + 1);
      EXPECT_TRUE(s.front().is_origin());
      EXPECT_EQ(s.back().l1_norm(), static_cast<Coord>(n));
      for (std::size_t t = 1; t < s.size(); ++t) {
        const LatticePoint step = s[t] - s[t - 1];
        EXPECT_EQ(step.l1_norm(), 1);
        for (Coord c : step.coords()) EXPECT_GE(c, 0);
      }
      for (const LatticePoint& p : s) {
        const auto [lo, hi] = std::minmax_element(p.coords().begin(), p.coords().end());
        EXPECT_LE(*hi - *lo, 1);
      }
      EXPECT_EQ(connects_origin_to_sphere(s, static_cast<Coord>(n)), n > 0);
    }
  }
  EXPECT_EQ(staircase_path(4, 2).points(), (std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}}));
}

TEST(Path, StraightAndTotalDifference) {
  const Path s = straight_path(3, 2);
  EXPECT_EQ(s.back(), (LatticePoint{3, 0}));
  // |0-0| + |1-0| + |2-0| + |3-0|
  EXPECT_EQ(total_difference(s), 6U);
  EXPECT_EQ(total_difference(staircase_path(3, 2)), 2U);
  // Revisits do not count twice.
  EXPECT_EQ(total_difference(validate_path({{0, 0}, {1, 0}, {0, 0}, {1, 0}})), 1U);
}

TEST(Path, MonotoneClassesOfThreeSteps) {
  const std::vector<Path> classes = monotone_path_classes(3, 3);
  ASSERT_EQ(classes.size(), 5U);
  EXPECT_EQ(classes.front(), straight_path(3, 3));
  EXPECT_EQ(classes.back(), staircase_path(3, 3));
}

// Number of set partitions of n labelled steps into at most d axes.
std::uint64_t partitions_up_to(std::size_t n, std::size_t d) {
  std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  s[0][0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = 1; k <= i; ++k) s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
  }
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= std::min(n, d); ++k) total += s[n][k];
  return total;
}

TEST(Path, MonotoneClassesCoverEveryMonotonePath) {
  for (std::size_t d = 1; d <= 4; ++d) {
    for (std::size_t n = 0; n <= 6; ++n) {
      const std::vector<Path> classes = monotone_path_classes(n, d);
      EXPECT_EQ(classes.size(), partitions_up_to(n, d)) << "n=" << n << " d=" << d;
      // Relabelling axes by first use maps any monotone path into the list.
      testing::Gen gen(n * 10 + d);
      for (int trial = 0; trial < 20; ++trial) {
        const Path p = gen.monotone(d, n);
        std::vector<std::size_t> label(d, d);
        std::size_t next = 0;
        std::vector<LatticePoint> pts{LatticePoint::origin(d)};
        for (std::size_t t = 1; t < p.size(); ++t) {
          std::size_t axis = 0;
          while (p[t][axis] == p[t - 1][axis]) ++axis;
          if (label[axis] == d) label[axis] = next++;
          pts.push_back(pts.back().with(label[axis], pts.back()[label[axis]] + 1));
        }
        const Path canonical = validate_path(std::move(pts));
        EXPECT_NE(std::find(classes.begin(), classes.end(), canonical), classes.end());
      }
    }
  }
}

TEST(CoverTarget, ModesAndProfiles) {
  const Path p = validate_path({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 0, 0}});
  const CoverTarget trace = CoverTarget::of_path(p, CoverMode::Trace);
  EXPECT_EQ(trace.points().size(), 3U);
  for (std::uint32_t r : trace.required()) EXPECT_EQ(r, 1U);

  const CoverTarget reps = CoverTarget::of_path(p, CoverMode::Repetitions);
  ASSERT_EQ(reps.points().size(), 3U);
  const auto y = std::find(reps.points().begin(), reps.points().end(), LatticePoint{1, 0, 0});
  EXPECT_EQ(reps.required()[static_cast<std::size_t>(y - reps.points().begin())], 2U);
  EXPECT_EQ(reps.profile().total(), 4U);
  EXPECT_EQ(reps.profile().count({1, 0, 0}), 2U);
  EXPECT_EQ(repetition_profile(p), reps.profile());

  const CoverTarget set = CoverTarget::of_points({{1, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(set.points().size(), 2U);
  EXPECT_EQ(set.mode(), CoverMode::Trace);
}

TEST(CoverTarget, ModeNames) {
  EXPECT_EQ(parse_cover_mode("trace"), CoverMode::Trace);
  EXPECT_EQ(parse_cover_mode("repetitions"), CoverMode::Repetitions);
  EXPECT_EQ(to_string(CoverMode::Repetitions), "repetitions");
  EXPECT_THROW(parse_cover_mode("sometimes"), InvalidArgument);
}

}  // namespace
}  // namespace walkcover
