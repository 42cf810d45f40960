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

#include "target_index.hpp"

#include <algorithm>
#include <limits>

#include "walkcover/errors.hpp"

namespace walkcover::detail {

namespace {
constexpr std::size_t kDenseLimit = std::size_t{1} << 22;
}

TargetIndex::TargetIndex(const std::vector<LatticePoint>& points, std::size_t d)
    : d_(d), lo_(d, 0), extent_(d, 0), stride_(d, 0), key_(d) {
  if (points.empty()) {
    dense_ = false;
    return;
  }
  std::vector<Coord> hi(d, std::numeric_limits<Coord>::min());
  std::fill(lo_.begin(), lo_.end(), std::numeric_limits<Coord>::max());
  for (const LatticePoint& p : points) {
    if (p.dim() != d) throw DimensionMismatch("target point dimension differs from walk dimension");
    for (std::size_t i = 0; i < d; ++i) {
      lo_[i] = std::min(lo_[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  std::size_t volume = 1;
  for (std::size_t i = 0; i < d; ++i) {
    extent_[i] = hi[i] - lo_[i] + 1;
    stride_[i] = volume;
    const auto e = static_cast<std::size_t>(extent_[i]);
    if (dense_ && volume > kDenseLimit / e) dense_ = false;
    if (dense_) volume *= e;
  }
  for (int k = 0; k < static_cast<int>(points.size()); ++k) {
    if (dense_) {
      if (table_.empty()) table_.assign(volume, -1);
      std::size_t offset = 0;
      for (std::size_t i = 0; i < d; ++i) offset += static_cast<std::size_t>(points[k][i] - lo_[i]) * stride_[i];
      table_[offset] = k;
    } else {
      sparse_.emplace(points[k], k);
    }
  }
}

}  // namespace walkcover::detail
