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
#include <optional>
#include <vector>

namespace walkcover::comb {

// Subsets of the ground set {0, ..., n-1} as bitmasks.
using Subset = std::uint32_t;

inline constexpr unsigned kMaxGroundSize = 30;
inline constexpr unsigned kMaxArcs = 30;

class GroundSet {
 public:
  explicit GroundSet(unsigned n);
  unsigned size() const noexcept { return n_; }
  Subset all() const noexcept { return n_ == 32 ? ~Subset{0} : (Subset{1} << n_) - 1; }
  bool contains(Subset s) const noexcept { return (s & ~all()) == 0; }

 private:
  unsigned n_;
};

class ArcCollection {
 public:
  ArcCollection(GroundSet ground, std::vector<Subset> arcs);

  const GroundSet& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  Subset operator[](std::size_t k) const { return arcs_[k]; }
  const std::vector<Subset>& arcs() const noexcept { return arcs_; }

  ArcCollection prefix(std::size_t m) const;
  ArcCollection appended(Subset arc) const;

 private:
  GroundSet ground_;
  std::vector<Subset> arcs_;
};

// Bit k set means sign +1 on arc k.
class Configuration {
 public:
  Configuration(unsigned m, std::uint32_t plus_mask);
  static Configuration from_signs(const std::vector<int>& signs);

  unsigned size() const noexcept { return m_; }
  int sign(unsigned k) const { return (plus_ >> k) & 1U ? 1 : -1; }
  std::uint32_t plus_mask() const noexcept { return plus_; }
  Configuration negated() const;

 private:
  unsigned m_;
  std::uint32_t plus_;
};

struct SignedSet {
  Subset positive = 0;
  Subset negative = 0;
  friend bool operator==(const SignedSet&, const SignedSet&) = default;
};

SignedSet inner_product(const ArcCollection& arcs, const Configuration& config);

bool covers(const ArcCollection& arcs, const Configuration& config, Subset target);

// Brute force over all 2^m configurations. Throws TooLarge past kMaxArcs.
std::uint64_t cover_count(const ArcCollection& arcs, Subset target);

// Same count, built arc by arc from the distribution of what is still
// missing; each step obeys |C(V,A)| = 2|C(V',A)| + |P(V,A)|.
std::uint64_t cover_count_recursive(const ArcCollection& arcs, Subset target);

// Configurations of all arcs but the last that fail to cover `target` yet
// are completed by one sign choice on the last arc.
std::uint64_t completion_count(const ArcCollection& arcs, Subset target);

struct Lemma21Report {
  bool holds = true;
  std::uint64_t full_count = 0;
  std::vector<std::uint64_t> counts;  // indexed by subset mask
  std::optional<Subset> witness;
};

// Checks |C(V, ground)| >= |C(V, A)| for every A.
Lemma21Report check_lemma21(const ArcCollection& arcs);

struct SweepReport {
  std::uint64_t collections = 0;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::optional<ArcCollection> first_violation;
};

// Every collection of m arcs over a ground set of size n: 2^(n*m)
// collections, each checked against all 2^n subsets.
SweepReport exhaustive_lemma21_sweep(unsigned n, unsigned m);

}  // namespace walkcover::comb
