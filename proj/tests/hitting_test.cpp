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

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "walkcover/errors.hpp"
#include "walkcover/montecarlo.hpp"

namespace walkcover {
namespace {

const LatticePoint o{0, 0, 0};
const LatticePoint y{1, 0, 0};
const LatticePoint w{1, 1, 0};
const LatticePoint z{0, 1, 0};

double g(const LatticePoint& x) { return green_value(WalkSpectrum::simple(3), x, 1e-8).value; }

// Cramer-free oracle: plain Gauss-Jordan on G(s_j - s_i) p = G(s_i - x).
std::vector<double> oracle_entry(const LatticePoint& x, const std::vector<LatticePoint>& s) {
  const std::size_t n = s.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = g(s[i] - s[j]);
    a[i][n] = g(s[i] - x);
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = a[i][n] / a[i][i];
  return p;
}

// Start inside the set: average over the first step.
std::vector<double> oracle_entry_from_set(const LatticePoint& x, const std::vector<LatticePoint>& s) {
  std::vector<double> p(s.size(), 0.0);
  for (const LatticePoint& n : neighbors(x)) {
    const auto it = std::find(s.begin(), s.end(), n);
    if (it != s.end()) {
      p[static_cast<std::size_t>(it - s.begin())] += 1.0 / 6.0;
      continue;
    }
    const std::vector<double> q = oracle_entry(n, s);
    for (std::size_t k = 0; k < s.size(); ++k) p[k] += q[k] / 6.0;
  }
  return p;
}

void expect_matches_oracle(const HittingQuery& q, const std::vector<double>& oracle) {
  const FirstEntry fe = first_entry_distribution(q, 1e-7);
  ASSERT_EQ(fe.probability.size(), oracle.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    EXPECT_NEAR(fe.probability[k].value, oracle[k], fe.probability[k].abs_error_bound + 1e-8);
    EXPECT_LT(fe.probability[k].abs_error_bound, 1e-5);
    sum += fe.probability[k].value;
  }
  EXPECT_NEAR(fe.total.value, sum, 1e-12);
  EXPECT_LE(fe.total.value, 1.0);
}

TEST(FirstEntry, PublishedSquareValues) {
  const auto entry = [](const LatticePoint& from, std::vector<LatticePoint> set, std::size_t k) {
    return first_entry_distribution({from, std::move(set)}, 1e-6).probability[k].value;
  };
  EXPECT_NEAR(entry(o, {y, z}, 0), 0.2792, 5e-3);
  EXPECT_NEAR(entry(o, {y, z, w}, 2), 0.0344, 5e-3);
  EXPECT_NEAR(entry(o, {y, z, w}, 0), 0.2696, 5e-3);
  EXPECT_NEAR(entry(o, {y, w}, 0), 0.3008, 5e-3);
  EXPECT_NEAR(entry(o, {y, w}, 1), 0.1155, 5e-3);
  EXPECT_NEAR(entry(o, {o, y}, 0), 0.2538, 2e-3);
  EXPECT_NEAR(entry(o, {o, y}, 1), 0.2538, 2e-3);
}

TEST(FirstEntry, MatchesIndependentLinearSolve) {
  expect_matches_oracle({o, {y, z}}, oracle_entry(o, {y, z}));
  expect_matches_oracle({o, {y, z, w}}, oracle_entry(o, {y, z, w}));
  expect_matches_oracle({o, {y, w}}, oracle_entry(o, {y, w}));
  expect_matches_oracle({o, {o, y}}, oracle_entry_from_set(o, {o, y}));
  expect_matches_oracle({{2, -1, 1}, {o, y, {0, 0, 2}, {-1, 1, 0}}},
                        oracle_entry({2, -1, 1}, {o, y, {0, 0, 2}, {-1, 1, 0}}));
  // By symmetry both points of {o, y} are equally likely from o.
  const FirstEntry sym = first_entry_distribution({o, {o, y}}, 1e-7);
  EXPECT_NEAR(sym.probability[0].value, sym.probability[1].value, 1e-6);
  EXPECT_NEAR(sym.probability[0].value, 0.254030471, 1e-6);
}

TEST(FirstEntry, SingletonTotalsAreGreenRatios) {
  testing::Gen gen(43);
  for (int trial = 0; trial < 10; ++trial) {
    const LatticePoint target = gen.point(3, 2);
    if (target.is_origin()) continue;
    const FirstEntry fe = first_entry_distribution({o, {target}}, 1e-6);
    EXPECT_NEAR(fe.total.value, g(target) / g(o), 1e-4) << to_string(target);
  }
  // Returning to the start: 1 - 1/G(0).
  EXPECT_NEAR(first_entry_distribution({o, {o}}, 1e-7).total.value, 1.0 - 1.0 / g(o), 1e-6);
}

TEST(FirstEntry, AddingPointsNeverRaisesEntryProbabilities) {
  testing::Gen gen(47);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<LatticePoint> set = gen.distinct_points(3, 2, 3);
    const LatticePoint start = gen.point(3, 3);
    if (std::find(set.begin(), set.end(), start) != set.end()) continue;
    const FirstEntry small = first_entry_distribution({start, set}, 1e-6);
    LatticePoint extra = gen.point(3, 2);
    if (extra == start || std::find(set.begin(), set.end(), extra) != set.end()) continue;
    set.push_back(extra);
    const FirstEntry big = first_entry_distribution({start, set}, 1e-6);
    for (std::size_t k = 0; k + 1 < set.size(); ++k) {
      EXPECT_LE(big.probability[k].value, small.probability[k].value + 1e-5);
    }
    EXPECT_GE(big.total.value, small.total.value - 1e-5);
  }
}

TEST(FirstEntry, Errors) {
  EXPECT_THROW(first_entry_distribution({o, {}}), InvalidArgument);
  EXPECT_THROW(first_entry_distribution({o, {y, y}}), InvalidArgument);
  EXPECT_THROW(first_entry_distribution({{0, 0}, {{1, 0}}}), RecurrentWalk);
  EXPECT_THROW(first_entry_distribution({o, {{1, 0}}}), DimensionMismatch);
  EXPECT_THROW(CompletionCalculator(2, {{1, 0}}), RecurrentWalk);
  EXPECT_THROW(CompletionCalculator(3, {}), InvalidArgument);
  CompletionCalculator calc(3, {y, w});
  const std::vector<std::uint32_t> one{1};
  EXPECT_THROW(calc.probability(o, one), LengthMismatch);
  EXPECT_THROW(calc.first_entry({0, 0}), DimensionMismatch);
}

TEST(Counterexample, AssembledProbabilities) {
  const CounterexampleReport r = counterexample_probabilities(1e-7);
  // Independent recombination from the oracle solves.
  const std::vector<double> yz = oracle_entry(o, {y, z});
  const std::vector<double> yzw = oracle_entry(o, {y, z, w});
  const std::vector<double> yw = oracle_entry(o, {y, w});
  const std::vector<double> oy = oracle_entry_from_set(o, {o, y});
  const double hit_y = g(y) / g(o);
  const double hit_w = g(w) / g(o);
  const double ret = 1.0 - 1.0 / g(o);
  const double p1 = 2 * yzw[0] * (yw[0] + yw[1]) * hit_y + 2 * yzw[2] * yz[0] * hit_w;
  const double p1_alt = 2 * yzw[0] * (yw[0] + yw[1]) * hit_y + 2 * yzw[2] * yz[0] * hit_y;
  const double p2 = yw[0] * (oy[0] + oy[1]) * hit_y + yw[1] * hit_y * ret;
  EXPECT_NEAR(r.p1.value, p1, r.p1.abs_error_bound + 1e-8);
  EXPECT_NEAR(r.p1_alt.value, p1_alt, r.p1_alt.abs_error_bound + 1e-8);
  EXPECT_NEAR(r.p2.value, p2, r.p2.abs_error_bound + 1e-8);
  EXPECT_NEAR(r.hit_w.value, hit_w, r.hit_w.abs_error_bound + 1e-8);
  EXPECT_NEAR(r.return_o.value, ret, r.return_o.abs_error_bound + 1e-8);

  EXPECT_NEAR(r.p1.value, 0.080845968, 1e-6);
  EXPECT_NEAR(r.p1_alt.value, 0.083209183, 1e-6);
  EXPECT_NEAR(r.p2.value, 0.065526586, 1e-6);
  // Recombining the rounded published constants.
  EXPECT_NEAR(r.p1.value, 2 * 0.2696 * (0.3008 + 0.1155) * 0.3401 + 2 * 0.0344 * 0.2792 * 0.2178, 5e-3);
  EXPECT_NEAR(r.p2.value, 0.3008 * (2 * 0.2538) * 0.3401 + 0.1155 * 0.3401 * 0.3401, 5e-3);
  EXPECT_TRUE(r.p1_exceeds_p2);
  EXPECT_GT(r.p1.value - r.p1.abs_error_bound, r.p2.value + r.p2.abs_error_bound);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Completion, AgreesWithTheMarkovFactorisation) {
  CompletionCalculator path(3, {y, w, z}, 1e-7);
  const std::vector<std::uint32_t> each{1, 1, 1};
  const CounterexampleReport r = counterexample_probabilities(1e-7);
  EXPECT_NEAR(path.probability(o, each), r.p1.value, 1e-5);

  // With nothing outstanding the walk is already done.
  const std::vector<std::uint32_t> none{0, 0, 0};
  EXPECT_EQ(path.probability(o, none), 1.0);
  // A single site reduces to the hitting probability.
  CompletionCalculator single(3, {w}, 1e-7);
  const std::vector<std::uint32_t> once{1};
  EXPECT_NEAR(single.probability(o, once), g(w) / g(o), 1e-6);
  const std::vector<std::uint32_t> twice{2};
  EXPECT_NEAR(single.probability(o, twice), g(w) / g(o) * (1.0 - 1.0 / g(o)), 1e-6);

  const std::vector<double> fe = path.first_entry(o);
  const std::vector<double> oracle = oracle_entry(o, {y, w, z});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(fe[k], oracle[k], 1e-6);

  // Far from the sites the far-field branch is used; it stays close to the
  // exact solve.
  const LatticePoint far{6, -4, 3};
  const std::vector<double> ff = path.first_entry(far);
  const std::vector<double> exact = oracle_entry(far, {y, w, z});
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(ff[k], exact[k], 2e-3 * exact[k]);
}

TEST(FirstEntry, MonteCarloWithLateEntryCorrection) {
  // Reduced scale: 2000-step walks, with the chance of a later first entry
  // from the endpoint added back.
  const std::vector<LatticePoint> set{y, z};
  CompletionCalculator late(3, set, 1e-6);
  SimConfig cfg;
  cfg.d = 3;
  cfg.steps = 2000;
  cfg.walks = 20000;
  cfg.seed = 2024;
  const FirstEntryEstimate mc = mc_first_entry(o, set, cfg, [&](const LatticePoint& end) { return late.first_entry(end); });
  const FirstEntry fe = first_entry_distribution({o, set}, 1e-7);
  for (std::size_t k = 0; k < set.size(); ++k) {
    const double estimate = mc.entry[k].p_hat + mc.late_mean[k];
    const double se = std::hypot(mc.entry[k].std_error, mc.late_std_error[k]);
    EXPECT_LE(std::abs(estimate - fe.probability[k].value), 4 * se + fe.probability[k].abs_error_bound) << k;
    EXPECT_GT(mc.late_mean[k], 0.0);
  }
}

}  // namespace
}  // namespace walkcover
