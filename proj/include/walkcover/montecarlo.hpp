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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "walkcover/lattice.hpp"

namespace walkcover {

struct SimConfig {
  std::size_t d = 2;
  std::uint64_t steps = 0;  // L
  std::uint64_t walks = 1;
  std::uint64_t seed = 0;
  CoverMode mode = CoverMode::Trace;
  bool early_stop = true;
  unsigned threads = 0;  // 0: default thread count

  void validate() const;
};

struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t n = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;  // Wilson 95% interval
  double ci_high = 0.0;

  static Estimate from_counts(std::uint64_t successes, std::uint64_t n);
};

// Bernoulli estimate of the probability that an L-step walk from the origin
// completes the target. The target's mode must match cfg.mode.
Estimate mc_cover_probability(const CoverTarget& target, const SimConfig& cfg);
Estimate mc_cover_probability(const Path& path, const SimConfig& cfg);

struct PairedDifference {
  std::size_t first = 0;
  std::size_t second = 0;
  double difference = 0.0;  // p_hat[first] - p_hat[second]
  double std_error = 0.0;
  std::uint64_t only_first = 0;   // walks covering first but not second
  std::uint64_t only_second = 0;  // (common random numbers only)
};

struct Comparison {
  bool common_random_numbers = true;
  std::vector<Estimate> estimates;
  std::vector<PairedDifference> pairs;  // every i < j
};

// With common random numbers every target is scored on the same walks and
// pair standard errors come from the per-walk differences; otherwise each
// target draws its own walks and the errors add in quadrature.
Comparison mc_compare(const std::vector<CoverTarget>& targets, const SimConfig& cfg, bool common_random_numbers = true);

// Success counts of each target at each horizon (sorted ascending, each
// <= cfg.steps) on one shared set of walks.
std::vector<std::vector<std::uint64_t>> mc_successes_by_horizon(const std::vector<CoverTarget>& targets,
                                                                 const SimConfig& cfg,
                                                                 const std::vector<std::uint64_t>& horizons);

// Scores a walk that has not completed the target by the horizon from its
// endpoint and the visits it still owes (aligned with target.points()).
using ResidualFn = std::function<double(const LatticePoint& endpoint, std::span<const std::uint32_t> outstanding)>;

struct ResidualEstimate {
  Estimate within_horizon;
  std::uint64_t unfinished = 0;
  double residual_mean = 0.0;  // average score over all walks (0 for completed ones)
  double residual_std_error = 0.0;
};

// When the score is the probability of completing later, residual_mean
// estimates the probability lost to the finite horizon. Uses the same walks
// as mc_cover_probability and mc_compare with common random numbers.
ResidualEstimate mc_cover_with_residual(const CoverTarget& target, const SimConfig& cfg, const ResidualFn& residual);

// Per-point probabilities of a later first entry from a walk's endpoint.
using LateEntryFn = std::function<std::vector<double>(const LatticePoint& endpoint)>;

struct FirstEntryEstimate {
  std::vector<Estimate> entry;  // aligned with the target set
  Estimate never;               // no entry within the horizon
  // Filled when a LateEntryFn is given: mean over all walks of the score of
  // walks that did not enter, per set point.
  std::vector<double> late_mean;
  std::vector<double> late_std_error;
};

// Which point of `set` a walk started at `start` reaches first at a time
// n >= 1 within cfg.steps steps.
FirstEntryEstimate mc_first_entry(const LatticePoint& start, const std::vector<LatticePoint>& set,
                                  const SimConfig& cfg, const LateEntryFn& late = {});

}  // namespace walkcover
