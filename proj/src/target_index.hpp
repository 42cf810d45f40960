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
#include <unordered_map>
#include <vector>

#include "walkcover/lattice.hpp"

namespace walkcover::detail {

// Maps a raw coordinate array to the index of a target point, or -1.
// Small bounding boxes use a dense table; large ones fall back to hashing.
class TargetIndex {
 public:
  TargetIndex(const std::vector<LatticePoint>& points, std::size_t d);

  int find(const Coord* pos) const {
    if (dense_) {
      std::size_t offset = 0;
      for (std::size_t i = 0; i < d_; ++i) {
        const Coord rel = pos[i] - lo_[i];
        if (rel < 0 || rel >= extent_[i]) return -1;
        offset += static_cast<std::size_t>(rel) * stride_[i];
      }
      return table_[offset];
    }
    for (std::size_t i = 0; i < d_; ++i) {
      if (pos[i] < lo_[i] || pos[i] >= lo_[i] + extent_[i]) return -1;
    }
    key_.assign(pos, pos + d_);
    auto it = sparse_.find(LatticePoint(key_));
    return it == sparse_.end() ? -1 : it->second;
  }

 private:
  std::size_t d_;
  bool dense_ = true;
  std::vector<Coord> lo_;
  std::vector<Coord> extent_;
  std::vector<std::size_t> stride_;
  std::vector<int> table_;
  std::unordered_map<LatticePoint, int, LatticePointHash> sparse_;
  mutable std::vector<Coord> key_;
};

}  // namespace walkcover::detail
