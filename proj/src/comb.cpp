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

#include "walkcover/comb.hpp"

#include <string>
#include <unordered_map>

#include "walkcover/errors.hpp"

namespace walkcover::comb {

namespace {

using MissingDistribution = std::unordered_map<std::uint64_t, std::uint64_t>;

std::uint64_t pack(Subset pos, Subset neg) { return (std::uint64_t{pos} << 32) | neg; }
Subset packed_pos(std::uint64_t key) { return static_cast<Subset>(key >> 32); }
Subset packed_neg(std::uint64_t key) { return static_cast<Subset>(key & 0xffffffffU); }

void check_target(const ArcCollection& arcs, Subset target) {
  if (!arcs.ground().contains(target)) throw InvalidArgument("target is not a subset of the ground set");
}

// For each configuration of the given arcs, what is still uncovered:
// elements of the target lacking a positive arc, and elements of the
// complement lacking a negative arc.
MissingDistribution missing_distribution(const ArcCollection& arcs, std::size_t m, Subset target) {
  MissingDistribution dist{{pack(target, arcs.ground().all() & ~target), 1}};
  for (std::size_t k = 0; k < m; ++k) {
    const Subset arc = arcs[k];
    MissingDistribution next;
    next.reserve(dist.size() * 2);
    for (const auto& [key, count] : dist) {
      next[pack(packed_pos(key) & ~arc, packed_neg(key))] += count;
      next[pack(packed_pos(key), packed_neg(key) & ~arc)] += count;
    }
    dist = std::move(next);
  }
  return dist;
}

}  // namespace

GroundSet::GroundSet(unsigned n) : n_(n) {
  if (n == 0) throw InvalidArgument("ground set must be nonempty");
  if (n > kMaxGroundSize) throw TooLarge("ground set size exceeds " + std::to_string(kMaxGroundSize));
}

ArcCollection::ArcCollection(GroundSet ground, std::vector<Subset> arcs) : ground_(ground), arcs_(std::move(arcs)) {
  for (Subset a : arcs_) {
    if (!ground_.contains(a)) throw InvalidArgument("arc is not a subset of the ground set");
  }
}

ArcCollection ArcCollection::prefix(std::size_t m) const {
  if (m > arcs_.size()) throw LengthMismatch("prefix longer than the collection");
  return ArcCollection(ground_, std::vector<Subset>(arcs_.begin(), arcs_.begin() + static_cast<std::ptrdiff_t>(m)));
}

ArcCollection ArcCollection::appended(Subset arc) const {
  std::vector<Subset> a = arcs_;
  a.push_back(arc);
  return ArcCollection(ground_, std::move(a));
}

Configuration::Configuration(unsigned m, std::uint32_t plus_mask) : m_(m), plus_(plus_mask) {
  if (m > kMaxArcs) throw TooLarge("configuration longer than " + std::to_string(kMaxArcs));
  if (m < 32 && (plus_mask >> m) != 0) throw InvalidArgument("configuration mask has bits past its length");
}

Configuration Configuration::from_signs(const std::vector<int>& signs) {
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] == 1) {
      mask |= std::uint32_t{1} << k;
    } else if (signs[k] != -1) {
      throw InvalidArgument("configuration entries must be +1 or -1");
    }
  }
  return Configuration(static_cast<unsigned>(signs.size()), mask);
}

Configuration Configuration::negated() const {
  const std::uint32_t full = m_ == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m_) - 1;
  return Configuration(m_, ~plus_ & full);
}

SignedSet inner_product(const ArcCollection& arcs, const Configuration& config) {
  if (arcs.size() != config.size()) throw LengthMismatch("configuration length differs from arc count");
  SignedSet out;
  for (unsigned k = 0; k < config.size(); ++k) {
    (config.sign(k) > 0 ? out.positive : out.negative) |= arcs[k];
  }
  return out;
}

bool covers(const ArcCollection& arcs, const Configuration& config, Subset target) {
  check_target(arcs, target);
  const SignedSet s = inner_product(arcs, config);
  const Subset complement = arcs.ground().all() & ~target;
  return (target & ~s.positive) == 0 && (complement & ~s.negative) == 0;
}

std::uint64_t cover_count(const ArcCollection& arcs, Subset target) {
  check_target(arcs, target);
  if (arcs.size() > kMaxArcs) throw TooLarge("more than " + std::to_string(kMaxArcs) + " arcs");
  const unsigned m = static_cast<unsigned>(arcs.size());
  const Subset complement = arcs.ground().all() & ~target;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Subset pos = 0;
    Subset neg = 0;
    for (unsigned k = 0; k < m; ++k) ((mask >> k) & 1U ? pos : neg) |= arcs[k];
    if ((target & ~pos) == 0 && (complement & ~neg) == 0) ++count;
  }
  return count;
}

std::uint64_t cover_count_recursive(const ArcCollection& arcs, Subset target) {
  check_target(arcs, target);
  if (arcs.size() > kMaxArcs) throw TooLarge("more than " + std::to_string(kMaxArcs) + " arcs");
  if (arcs.size() == 0) return 0;  // nothing is covered and the ground set is nonempty
  const ArcCollection head = arcs.prefix(arcs.size() - 1);
  return 2 * cover_count_recursive(head, target) + completion_count(arcs, target);
}

std::uint64_t completion_count(const ArcCollection& arcs, Subset target) {
  check_target(arcs, target);
  if (arcs.size() == 0) throw LengthMismatch("completion needs at least one arc");
  const Subset last = arcs[arcs.size() - 1];
  std::uint64_t count = 0;
  for (const auto& [key, n] : missing_distribution(arcs, arcs.size() - 1, target)) {
    const Subset pos = packed_pos(key);
    const Subset neg = packed_neg(key);
    if (pos == 0 && neg == 0) continue;
    const bool plus_completes = neg == 0 && (pos & ~last) == 0;
    const bool minus_completes = pos == 0 && (neg & ~last) == 0;
    if (plus_completes || minus_completes) count += n;
  }
  return count;
}

Lemma21Report check_lemma21(const ArcCollection& arcs) {
  if (arcs.size() > kMaxArcs) throw TooLarge("more than " + std::to_string(kMaxArcs) + " arcs");
  Lemma21Report report;
  const Subset all = arcs.ground().all();
  report.counts.resize(std::size_t{all} + 1);
  for (Subset a = 0;; ++a) {
    report.counts[a] = cover_count(arcs, a);
    if (a == all) break;
  }
  report.full_count = report.counts[all];
  for (Subset a = 0; a <= all; ++a) {
    if (report.counts[a] > report.full_count) {
      report.holds = false;
      report.witness = a;
      break;
    }
  }
  return report;
}

SweepReport exhaustive_lemma21_sweep(unsigned n, unsigned m) {
  if (static_cast<std::uint64_t>(n) * m > 24) throw TooLarge("exhaustive sweep limited to n*m <= 24");
  const GroundSet ground(n);
  const std::uint64_t per_arc = std::uint64_t{1} << n;
  const std::uint64_t total = std::uint64_t{1} << (n * m);
  SweepReport report;
  std::vector<Subset> arcs(m);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (unsigned k = 0; k < m; ++k) {
      arcs[k] = static_cast<Subset>(rest % per_arc);
      rest /= per_arc;
    }
    const ArcCollection collection(ground, arcs);
    const Lemma21Report r = check_lemma21(collection);
    ++report.collections;
    report.cases += per_arc;
    if (!r.holds) {
      ++report.violations;
      if (!report.first_violation) report.first_violation = collection;
    }
  }
  return report;
}

}  // namespace walkcover::comb
