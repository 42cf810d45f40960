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

#include "walkcover/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <map>
#include <tuple>
#include <unordered_map>

#include "target_index.hpp"
#include "walkcover/errors.hpp"
#include "walkcover/parallel.hpp"
#include "walkcover/rng.hpp"

namespace walkcover {

namespace {

constexpr std::uint64_t kChunkWalks = 1 << 14;
constexpr std::uint32_t kFirstEntryTag = 0x48495421U;
constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

std::size_t chunk_count(std::uint64_t walks) { return static_cast<std::size_t>((walks + kChunkWalks - 1) / kChunkWalks); }

// Tracks several targets along one walk with a single point lookup per step.
class MultiTargetWalker {
 public:
  MultiTargetWalker(const std::vector<CoverTarget>& targets, std::size_t d) : d_(d), k_(targets.size()) {
    for (const CoverTarget& t : targets) {
      if (!t.empty() && t.dim() != d) throw DimensionMismatch("target dimension differs from walk dimension");
      points_.insert(points_.end(), t.points().begin(), t.points().end());
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    index_ = std::make_unique<detail::TargetIndex>(points_, d);
    const std::size_t u = points_.size();
    need_template_.assign(k_ * u, 0);
    outstanding_template_.assign(k_, 0);
    for (std::size_t k = 0; k < k_; ++k) {
      const CoverTarget& t = targets[k];
      for (std::size_t i = 0; i < t.points().size(); ++i) {
        const auto uid = std::lower_bound(points_.begin(), points_.end(), t.points()[i]) - points_.begin();
        need_template_[static_cast<std::size_t>(uid) * k_ + k] = t.required()[i];
        outstanding_template_[k] += t.required()[i];
      }
    }
  }

  std::span<const Coord> position() const noexcept { return pos_; }
  // Outstanding visits per union point; with a single target these align
  // with its sorted points.
  std::span<const std::uint32_t> needs() const noexcept { return need_; }

  // Success step of each target (kNever if not within `steps`).
  void run(CounterStream& rng, std::uint64_t steps, bool early_stop, std::vector<std::uint64_t>& success) {
    need_ = need_template_;
    outstanding_ = outstanding_template_;
    pos_.assign(d_, 0);
    success.assign(k_, kNever);
    pending_ = k_;
    visit(0, success);
    const auto directions = static_cast<std::uint32_t>(2 * d_);
    for (std::uint64_t t = 1; t <= steps && (pending_ > 0 || !early_stop); ++t) {
      const std::uint32_t dir = rng.below(directions);
      pos_[dir >> 1] += (dir & 1U) ? -1 : 1;
      visit(t, success);
    }
  }

 private:
  void visit(std::uint64_t t, std::vector<std::uint64_t>& success) {
    const int uid = index_->find(pos_.data());
    if (uid < 0) return;
    std::uint32_t* need = &need_[static_cast<std::size_t>(uid) * k_];
    for (std::size_t k = 0; k < k_; ++k) {
      if (need[k] == 0) continue;
      --need[k];
      if (--outstanding_[k] == 0) {
        success[k] = t;
        --pending_;
      }
    }
  }

  std::size_t d_;
  std::size_t k_;
  std::vector<LatticePoint> points_;
  std::unique_ptr<detail::TargetIndex> index_;
  std::vector<std::uint32_t> need_template_;
  std::vector<std::uint64_t> outstanding_template_;
  std::vector<std::uint32_t> need_;
  std::vector<std::uint64_t> outstanding_;
  std::vector<Coord> pos_;
  std::size_t pending_ = 0;
};

void check_targets(const std::vector<CoverTarget>& targets, const SimConfig& cfg) {
  for (const CoverTarget& t : targets) {
    if (t.mode() != cfg.mode) {
      throw InvalidArgument("target mode '" + to_string(t.mode()) + "' differs from configured mode '" +
                            to_string(cfg.mode) + "'");
    }
  }
}

// Runs every walk once against all targets; `sink(chunk, successes)` is
// called per walk from worker threads with the chunk index.
template <typename Sink>
void simulate(const std::vector<CoverTarget>& targets, const SimConfig& cfg, std::uint32_t tag, Sink&& sink) {
  const std::size_t chunks = chunk_count(cfg.walks);
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    MultiTargetWalker walker(targets, cfg.d);
    std::vector<std::uint64_t> success;
    const std::uint64_t begin = c * kChunkWalks;
    const std::uint64_t end = std::min<std::uint64_t>(cfg.walks, begin + kChunkWalks);
    for (std::uint64_t w = begin; w < end; ++w) {
      CounterStream rng(cfg.seed, w, tag);
      walker.run(rng, cfg.steps, cfg.early_stop, success);
      sink(c, success);
    }
  });
}

struct MomentSums {
  double sum = 0.0;
  double sum_squares = 0.0;
};

MomentSums chunk_moments(const std::vector<double>& values) {
  std::vector<double> squares(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) squares[i] = values[i] * values[i];
  return {pairwise_sum(values), pairwise_sum(squares)};
}

// Mean and standard error from per-chunk sums, combined in chunk order.
std::pair<double, double> mean_and_error(const std::vector<MomentSums>& chunks, std::uint64_t n) {
  std::vector<double> sums;
  std::vector<double> squares;
  for (const MomentSums& m : chunks) {
    sums.push_back(m.sum);
    squares.push_back(m.sum_squares);
  }
  const double nn = static_cast<double>(n);
  const double mean = pairwise_sum(sums) / nn;
  const double var = std::max(0.0, pairwise_sum(squares) / nn - mean * mean);
  return {mean, std::sqrt(var / nn)};
}

}  // namespace

void SimConfig::validate() const {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  if (d > 1U << 30) throw InvalidArgument("dimension too large");
  if (walks == 0) throw InvalidArgument("number of walks must be >= 1");
}

Estimate Estimate::from_counts(std::uint64_t successes, std::uint64_t n) {
  if (n == 0 || successes > n) throw InvalidArgument("estimate needs 0 <= successes <= n and n >= 1");
  Estimate e;
  e.successes = successes;
  e.n = n;
  const double nn = static_cast<double>(n);
  e.p_hat = static_cast<double>(successes) / nn;
  e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / nn);
  constexpr double z = 1.959963984540054;
  const double denom = 1.0 + z * z / nn;
  const double centre = (e.p_hat + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(e.p_hat * (1.0 - e.p_hat) / nn + z * z / (4.0 * nn * nn)) / denom;
  e.ci_low = std::clamp(centre - half, 0.0, e.p_hat);
  e.ci_high = std::clamp(centre + half, e.p_hat, 1.0);
  return e;
}

Estimate mc_cover_probability(const CoverTarget& target, const SimConfig& cfg) {
  return mc_compare({target}, cfg, true).estimates.front();
}

Estimate mc_cover_probability(const Path& path, const SimConfig& cfg) {
  return mc_cover_probability(CoverTarget::of_path(path, cfg.mode), cfg);
}

Comparison mc_compare(const std::vector<CoverTarget>& targets, const SimConfig& cfg, bool common_random_numbers) {
  cfg.validate();
  check_targets(targets, cfg);
  if (targets.empty()) throw InvalidArgument("nothing to compare");
  if (targets.size() > 64) throw TooLarge("at most 64 targets per comparison");
  const std::size_t k = targets.size();
  Comparison out;
  out.common_random_numbers = common_random_numbers;

  if (common_random_numbers) {
    // Per chunk: histogram of which targets each walk completed.
    std::vector<std::map<std::uint64_t, std::uint64_t>> patterns(chunk_count(cfg.walks));
    simulate(targets, cfg, 0, [&](std::size_t c, const std::vector<std::uint64_t>& success) {
      std::uint64_t bits = 0;
      for (std::size_t t = 0; t < k; ++t) {
        if (success[t] != kNever) bits |= std::uint64_t{1} << t;
      }
      ++patterns[c][bits];
    });
    std::map<std::uint64_t, std::uint64_t> merged;
    for (const auto& chunk : patterns) {
      for (const auto& [bits, n] : chunk) merged[bits] += n;
    }
    for (std::size_t t = 0; t < k; ++t) {
      std::uint64_t s = 0;
      for (const auto& [bits, n] : merged) s += (bits >> t) & 1U ? n : 0;
      out.estimates.push_back(Estimate::from_counts(s, cfg.walks));
    }
    const double n = static_cast<double>(cfg.walks);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        PairedDifference pd{i, j};
        for (const auto& [bits, c] : merged) {
          const bool a = (bits >> i) & 1U;
          const bool b = (bits >> j) & 1U;
          if (a && !b) pd.only_first += c;
          if (b && !a) pd.only_second += c;
        }
        const double mean = (static_cast<double>(pd.only_first) - static_cast<double>(pd.only_second)) / n;
        const double second_moment = static_cast<double>(pd.only_first + pd.only_second) / n;
        pd.difference = mean;
        pd.std_error = std::sqrt(std::max(0.0, second_moment - mean * mean) / n);
        out.pairs.push_back(pd);
      }
    }
    return out;
  }

  for (std::size_t t = 0; t < k; ++t) {
    std::vector<std::uint64_t> per_chunk(chunk_count(cfg.walks), 0);
    simulate({targets[t]}, cfg, static_cast<std::uint32_t>(t + 1),
             [&](std::size_t c, const std::vector<std::uint64_t>& success) { per_chunk[c] += success[0] != kNever; });
    std::uint64_t s = 0;
    for (std::uint64_t v : per_chunk) s += v;
    out.estimates.push_back(Estimate::from_counts(s, cfg.walks));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      PairedDifference pd{i, j};
      pd.difference = out.estimates[i].p_hat - out.estimates[j].p_hat;
      pd.std_error = std::hypot(out.estimates[i].std_error, out.estimates[j].std_error);
      out.pairs.push_back(pd);
    }
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> mc_successes_by_horizon(const std::vector<CoverTarget>& targets,
                                                                 const SimConfig& cfg,
                                                                 const std::vector<std::uint64_t>& horizons) {
  cfg.validate();
  check_targets(targets, cfg);
  if (!std::is_sorted(horizons.begin(), horizons.end()) || (!horizons.empty() && horizons.back() > cfg.steps)) {
    throw InvalidArgument("horizons must be ascending and not exceed the configured number of steps");
  }
  const std::size_t k = targets.size();
  const std::size_t h = horizons.size();
  std::vector<std::vector<std::uint64_t>> per_chunk(chunk_count(cfg.walks), std::vector<std::uint64_t>(h * k, 0));
  simulate(targets, cfg, 0, [&](std::size_t c, const std::vector<std::uint64_t>& success) {
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t i = 0; i < h; ++i) per_chunk[c][i * k + t] += success[t] <= horizons[i];
    }
  });
  std::vector<std::vector<std::uint64_t>> out(h, std::vector<std::uint64_t>(k, 0));
  for (const auto& chunk : per_chunk) {
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t t = 0; t < k; ++t) out[i][t] += chunk[i * k + t];
    }
  }
  return out;
}

ResidualEstimate mc_cover_with_residual(const CoverTarget& target, const SimConfig& cfg, const ResidualFn& residual) {
  cfg.validate();
  check_targets({target}, cfg);
  if (!residual) throw InvalidArgument("residual function is empty");
  const std::size_t chunks = chunk_count(cfg.walks);
  std::vector<std::uint64_t> successes(chunks, 0);
  std::vector<MomentSums> moments(chunks);
  const std::vector<CoverTarget> targets{target};
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    MultiTargetWalker walker(targets, cfg.d);
    std::vector<std::uint64_t> success;
    const std::uint64_t begin = c * kChunkWalks;
    const std::uint64_t end = std::min<std::uint64_t>(cfg.walks, begin + kChunkWalks);
    std::vector<double> scores;
    scores.reserve(end - begin);
    for (std::uint64_t w = begin; w < end; ++w) {
      CounterStream rng(cfg.seed, w, 0);
      walker.run(rng, cfg.steps, cfg.early_stop, success);
      if (success[0] != kNever) {
        ++successes[c];
        scores.push_back(0.0);
        continue;
      }
      const std::span<const Coord> pos = walker.position();
      scores.push_back(residual(LatticePoint(std::vector<Coord>(pos.begin(), pos.end())), walker.needs()));
    }
    moments[c] = chunk_moments(scores);
  });
  ResidualEstimate out;
  std::uint64_t s = 0;
  for (std::uint64_t v : successes) s += v;
  out.within_horizon = Estimate::from_counts(s, cfg.walks);
  out.unfinished = cfg.walks - s;
  std::tie(out.residual_mean, out.residual_std_error) = mean_and_error(moments, cfg.walks);
  return out;
}

FirstEntryEstimate mc_first_entry(const LatticePoint& start, const std::vector<LatticePoint>& set,
                                  const SimConfig& cfg, const LateEntryFn& late) {
  cfg.validate();
  if (start.dim() != cfg.d) throw DimensionMismatch("start point dimension differs from walk dimension");
  if (set.empty()) throw InvalidArgument("target set must be nonempty");
  const detail::TargetIndex index(set, cfg.d);
  const std::size_t m = set.size();
  const std::size_t chunks = chunk_count(cfg.walks);
  std::vector<std::vector<std::uint64_t>> per_chunk(chunks, std::vector<std::uint64_t>(m + 1, 0));
  std::vector<std::vector<MomentSums>> late_moments(m, std::vector<MomentSums>(chunks));
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    std::vector<std::vector<double>> scores(late ? m : 0);
    std::vector<Coord> pos(cfg.d);
    const auto directions = static_cast<std::uint32_t>(2 * cfg.d);
    const std::uint64_t begin = c * kChunkWalks;
    const std::uint64_t end = std::min<std::uint64_t>(cfg.walks, begin + kChunkWalks);
    for (std::uint64_t w = begin; w < end; ++w) {
      CounterStream rng(cfg.seed, w, kFirstEntryTag);
      std::copy(start.coords().begin(), start.coords().end(), pos.begin());
      std::size_t outcome = m;
      for (std::uint64_t t = 1; t <= cfg.steps; ++t) {
        const std::uint32_t dir = rng.below(directions);
        pos[dir >> 1] += (dir & 1U) ? -1 : 1;
        const int k = index.find(pos.data());
        if (k >= 0) {
          outcome = static_cast<std::size_t>(k);
          break;
        }
      }
      ++per_chunk[c][outcome];
      if (!late) continue;
      std::vector<double> score(m, 0.0);
      if (outcome == m) {
        score = late(LatticePoint(pos));
        if (score.size() != m) throw LengthMismatch("late-entry function must score every set point");
      }
      for (std::size_t i = 0; i < m; ++i) scores[i].push_back(score[i]);
    }
    for (std::size_t i = 0; i < scores.size(); ++i) late_moments[i][c] = chunk_moments(scores[i]);
  });
  std::vector<std::uint64_t> totals(m + 1, 0);
  for (const auto& chunk : per_chunk) {
    for (std::size_t i = 0; i <= m; ++i) totals[i] += chunk[i];
  }
  FirstEntryEstimate out;
  for (std::size_t i = 0; i < m; ++i) out.entry.push_back(Estimate::from_counts(totals[i], cfg.walks));
  out.never = Estimate::from_counts(totals[m], cfg.walks);
  if (late) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto [mean, err] = mean_and_error(late_moments[i], cfg.walks);
      out.late_mean.push_back(mean);
      out.late_std_error.push_back(err);
    }
  }
  return out;
}

}  // namespace walkcover
