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

#include <array>
#include <cstdint>

namespace walkcover {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9U;
        key[1] += 0xBB67AE85U;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53U} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57U} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }
};

// Independent stream of 32-bit words for (seed, index, tag). The seed is the
// key; index and tag occupy three counter words and the fourth counts blocks,
// so every (seed, index, tag) triple owns 2^34 words.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t index, std::uint32_t tag = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), tag, 0} {}

  std::uint32_t next() {
    if (used_ == 4) refill();
    return buffer_[used_++];
  }

  // Uniform on [0, n) by multiply-shift with rejection (Lemire 2019).
  std::uint32_t below(std::uint32_t n) {
    std::uint64_t m = std::uint64_t{next()} * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n) {
      const std::uint32_t threshold = (0U - n) % n;
      while (low < threshold) {
        m = std::uint64_t{next()} * n;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t hi = next() >> 5;
    const std::uint64_t lo = next() >> 6;
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
  }

 private:
  void refill() {
    buffer_ = Philox4x32::block(ctr_, key_);
    ++ctr_[3];
    used_ = 0;
  }

  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

// 64 bits from the operating system's entropy source.
std::uint64_t fresh_seed();

}  // namespace walkcover
