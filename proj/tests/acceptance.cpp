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

// Acceptance gate: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "walkcover/comb.hpp"
#include "walkcover/exact.hpp"
#include "walkcover/green.hpp"
#include "walkcover/hitting.hpp"
#include "walkcover/montecarlo.hpp"
#include "walkcover/parallel.hpp"

namespace {

using namespace walkcover;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  // Records one check; all checks must hold.
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "[failed] ") << what << "; ";
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

constexpr std::uint64_t kSeed = 20260416;

const LatticePoint kO{0, 0, 0};
const LatticePoint kY{1, 0, 0};
const LatticePoint kW{1, 1, 0};
const LatticePoint kZ{0, 1, 0};

void green_values(Verdict& v) {
  const auto start = Clock::now();
  const WalkSpectrum s3 = WalkSpectrum::simple(3);
  const struct {
    LatticePoint x;
    double published;
  } rows[] = {{kO, 1.5153}, {kY, 0.5153}, {{2, 0, 0}, 0.2563}, {kW, 0.3301}};
  for (const auto& r : rows) {
    const GreenValue g = green_value(s3, r.x, 1e-7);
    v.check(std::abs(g.value - r.published) <= 2e-3, "G" + to_string(r.x) + " = " + fmt(g.value, 10) + " vs " +
                                                          fmt(r.published) + " +- 2e-3");
  }
  const GreenValue g0 = green_value(s3, kO, 1e-7);
  const GreenValue g1 = green_value(s3, kY, 1e-7);
  const double gap = std::abs(g0.value - g1.value - 1.0);
  v.check(gap + g0.abs_error_bound + g1.abs_error_bound <= 1e-6, "|G(0) - G(e1) - 1| = " + fmt(gap, 3));
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  v.check(secs < 30.0, "runtime " + fmt(secs, 3) + " s < 30 s");
}

void return_probability_check(Verdict& v) {
  const BoundedValue p = return_probability(3, 1e-7);
  v.check(std::abs(p.value - 0.3401) <= 2e-3, "p_3 = " + fmt(p.value, 10) + " vs 0.3401 +- 2e-3");
  const GreenEvaluation e = green_evaluate(WalkSpectrum::simple(3), kO, 1e-7);
  const double diff = std::abs(e.step_sum.value - e.fourier->value);
  const double bound = e.step_sum.abs_error_bound + e.fourier->abs_error_bound;
  v.check(diff <= bound, "|step sum - Fourier| = " + fmt(diff, 3) + " <= " + fmt(bound, 3));
}

void hitting_values(Verdict& v) {
  const auto entry = [](std::vector<LatticePoint> set, std::size_t k) {
    return first_entry_distribution({kO, std::move(set)}, 1e-7).probability[k].value;
  };
  const struct {
    const char* name;
    double value;
    double published;
  } rows[] = {{"{y,z}: y", entry({kY, kZ}, 0), 0.2792},      {"{y,z,w}: w", entry({kY, kZ, kW}, 2), 0.0344},
              {"{y,w}: y", entry({kY, kW}, 0), 0.3008},      {"{y,w}: w", entry({kY, kW}, 1), 0.1155},
              {"{y,z,w}: y", entry({kY, kZ, kW}, 0), 0.2696}, {"{o,y}: o", entry({kO, kY}, 0), 0.2538},
              {"{o,y}: y", entry({kO, kY}, 1), 0.2538}};
  for (const auto& r : rows) {
    v.check(std::abs(r.value - r.published) <= 5e-3,
            std::string(r.name) + " " + fmt(r.value, 7) + " vs " + fmt(r.published) + " +- 5e-3");
  }
}

std::vector<CoverTarget> square_targets() {
  const Path first = validate_path({kO, kY, kW, kZ});
  const Path second = validate_path({kO, kY, kW, kY});
  return {CoverTarget::of_path(first, CoverMode::Repetitions), CoverTarget::of_path(second, CoverMode::Repetitions)};
}

SimConfig square_config(unsigned threads) {
  SimConfig cfg;
  cfg.d = 3;
  cfg.steps = 10'000;
  cfg.walks = 100'000;
  cfg.seed = kSeed;
  cfg.mode = CoverMode::Repetitions;
  cfg.threads = threads;
  return cfg;
}

void counterexample_check(Verdict& v) {
  const auto start = Clock::now();
  const CounterexampleReport r = counterexample_probabilities(1e-7);
  v.check(std::abs(r.p1.value - 0.0805) <= 5e-3, "p1 = " + fmt(r.p1.value, 7) + " vs 0.0805 +- 5e-3");
  v.check(std::abs(r.p2.value - 0.0653) <= 5e-3, "p2 = " + fmt(r.p2.value, 7) + " vs 0.0653 +- 5e-3");
  v.check(r.p1.value - r.p1.abs_error_bound > r.p2.value + r.p2.abs_error_bound, "p1 > p2");

  const std::vector<CoverTarget> targets = square_targets();
  const SimConfig cfg = square_config(0);
  const Comparison cmp = mc_compare(targets, cfg, true);
  const double pipeline[2] = {r.p1.value, r.p2.value};
  const char* names[2] = {"(o,y,w,z)", "(o,y,w,y)"};
  for (std::size_t k = 0; k < 2; ++k) {
    const Estimate& e = cmp.estimates[k];
    v.check(std::abs(e.p_hat - pipeline[k]) <= 0.01, std::string("MC ") + names[k] + " = " + fmt(e.p_hat, 5) +
                                                          " +- " + fmt(e.std_error, 2) + " within 0.01");
    // Chance of completing after the horizon: the exact Markov identity,
    // scored from each unfinished walk's endpoint.
    CompletionCalculator calc(3, targets[k].points(), 1e-6);
    const ResidualEstimate res = mc_cover_with_residual(
        targets[k], cfg, [&calc](const LatticePoint& x, std::span<const std::uint32_t> need) {
          return calc.probability(x, need);
        });
    v.check(res.residual_mean + 2.0 * res.residual_std_error < 2e-3,
            std::string("horizon loss ") + names[k] + " = " + fmt(res.residual_mean, 3) + " +- " +
                fmt(res.residual_std_error, 2) + " < 2e-3");
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const unsigned cores = std::thread::hardware_concurrency();
  v.check(secs < 600.0, "runtime " + fmt(secs, 4) + " s on " + std::to_string(cores) + " core(s) < 600 s");
}

void comb_check(Verdict& v) {
  const auto start = Clock::now();
  std::uint64_t collections = 0;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned m = 1; m <= 4; ++m) {
      const comb::SweepReport r = comb::exhaustive_lemma21_sweep(n, m);
      collections += r.collections;
      cases += r.cases;
      violations += r.violations;
    }
  }
  v.check(violations == 0, std::to_string(violations) + " violations over " + std::to_string(collections) +
                               " collections, " + std::to_string(cases) + " (collection, subset) cases");
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  v.check(secs < 60.0, "runtime " + fmt(secs, 3) + " s < 60 s");
}

void reflection_check(Verdict& v) {
  const auto start = Clock::now();
  const ReflectionSweepReport r = sweep_reflected_pairs(Hyperplane(0, 1, 1), 2, 6, 2, 2, 0);
  v.check(r.violations == 0, std::to_string(r.violations) + " violations over " + std::to_string(r.pairs) +
                                 " (A0,B0) pairs x L = 0..6 (" + std::to_string(r.strict) + " strict)");
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  v.check(secs < 600.0, "runtime " + fmt(secs, 3) + " s < 600 s");
}

void staircase_check(Verdict& v) {
  const auto start = Clock::now();
  for (const auto& [n, steps, cap] : {std::tuple{2U, 6U, 3U}, std::tuple{3U, 7U, 5U}}) {
    const StaircaseReport r = verify_staircase_max(n, 2, steps, cap, 0);
    v.check(r.staircase_is_max, "N=" + std::to_string(n) + " L=" + std::to_string(steps) + " cap " +
                                    std::to_string(cap) + ": staircase rank " + std::to_string(r.staircase_rank) +
                                    " of " + std::to_string(r.rows.size()) + " traces");
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  v.check(secs < 300.0, "runtime " + fmt(secs, 3) + " s < 300 s");
}

void asymptotics_check(Verdict& v) {
  const SweepTable simple = asymptotic_sweep(3, 10, 1e-5);
  v.check(std::abs(simple.rows.front().two_d_p - 2.043) < 1e-3,
          "2d p_d at d=3 is " + fmt(simple.rows.front().two_d_p, 7));
  v.check(simple.two_d_p_decreasing && simple.two_d_p_above_one,
          "2d p_d strictly decreasing and > 1 for d=3..10, last " + fmt(simple.rows.back().two_d_p, 5));
  v.check(simple.d_excess_decreasing, "d E_d decreasing, last " + fmt(simple.rows.back().d_excess, 4));
  v.check(simple.p_above_lower_bound, "p_d > 1/(2d)");
  const SweepTable diag = asymptotic_sweep(4, 8, 1e-5);
  v.check(diag.diag_p_nonincreasing, "P_{d+1} <= P_d for d=4..8");
  v.check(diag.two_d_diag_p_decreasing && diag.two_d_diag_p_above_one,
          "2d P_d > 1 and decreasing, last " + fmt(*diag.rows.back().two_d_diag_p, 5));
  v.detail << "trends only: the limits are not reached at these dimensions; ";
}

void moment_check(Verdict& v) {
  for (const auto& [i, j, k] : {std::tuple{0U, 3U, 1U}, std::tuple{0U, 3U, 2U}, std::tuple{0U, 4U, 2U}}) {
    const double r = lemma_a5_check(6, i, j, k);
    v.check(r <= 1e-6, "d=6 (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                           "): |integral| = " + fmt(r, 3) + " (cycle distance " +
                           std::to_string(cyclic_distance(6, i, j)) + ") <= 1e-6");
  }
  const double control = std::abs(diagonal_moment_integral(6, 0, 1, 1));
  v.check(control > 1e-2, "control d=6 (0,1,1) = " + fmt(control, 6) + " > 1e-2");
}

Comparison monotone_comparison(unsigned threads) {
  std::vector<CoverTarget> targets;
  for (const Path& p : monotone_path_classes(3, 3)) targets.push_back(CoverTarget::of_path(p, CoverMode::Trace));
  SimConfig cfg;
  cfg.d = 3;
  cfg.steps = 400;
  cfg.walks = 500'000;
  cfg.seed = kSeed + 1;
  cfg.threads = threads;
  return mc_compare(targets, cfg, true);
}

void monotone_check(Verdict& v) {
  const Comparison c = monotone_comparison(0);
  std::size_t smallest = 0;
  for (std::size_t k = 1; k < c.estimates.size(); ++k) {
    if (c.estimates[k].p_hat < c.estimates[smallest].p_hat) smallest = k;
  }
  v.check(smallest == 0, "smallest estimate is class " + std::to_string(smallest + 1) + " (straight path is class 1)");
  double worst_z = INFINITY;
  for (const PairedDifference& pd : c.pairs) {
    if (pd.first != 0) continue;
    const double z = -pd.difference / pd.std_error;
    worst_z = std::min(worst_z, z);
  }
  v.check(worst_z >= 3.0, "straight path below every other by >= " + fmt(worst_z, 4) + " paired std errors (need 3)");
  for (std::size_t k = 0; k < c.estimates.size(); ++k) {
    v.detail << "class " << k + 1 << " " << fmt(c.estimates[k].p_hat, 5) << "; ";
  }
}

void determinism_check(Verdict& v) {
  const std::vector<CoverTarget> targets = square_targets();
  const Comparison a = mc_compare(targets, square_config(1), true);
  const Comparison b = mc_compare(targets, square_config(8), true);
  bool same = true;
  for (std::size_t k = 0; k < targets.size(); ++k) same = same && a.estimates[k].successes == b.estimates[k].successes;
  v.check(same, "square paths: " + std::to_string(a.estimates[0].successes) + "/" +
                    std::to_string(a.estimates[1].successes) + " with 1 and 8 threads");
  const Comparison c = monotone_comparison(1);
  const Comparison d = monotone_comparison(8);
  same = true;
  for (std::size_t k = 0; k < c.estimates.size(); ++k) same = same && c.estimates[k].successes == d.estimates[k].successes;
  v.check(same, "monotone classes identical with 1 and 8 threads");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"Green function values in Z^3", green_values},
      {"return probability and method agreement", return_probability_check},
      {"first-entry values of the square", hitting_values},
      {"square path covering probabilities", counterexample_check},
      {"sign-configuration inequality, exhaustive", comb_check},
      {"reflection inequality, exhaustive", reflection_check},
      {"staircase maximality, exact", staircase_check},
      {"return probability trends", asymptotics_check},
      {"vanishing moment integrals", moment_check},
      {"monotone path classes by simulation", monotone_check},
      {"thread-count determinism", determinism_check},
  };
  std::set<std::size_t> selected;
  for (int a = 1; a < argc; ++a) selected.insert(static_cast<std::size_t>(std::atoi(argv[a])));

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!selected.empty() && !selected.count(k + 1)) continue;
    Verdict v;
    const auto start = Clock::now();
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    all = all && v.pass;
    std::cout << "criterion " << k + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << " ("
              << fmt(secs, 3) << " s)  " << v.detail.str() << std::endl;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
