// Copyright 2026 The erasekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace erasekit {

// Advances `state` by the splitmix64 increment and returns the mixed value.
std::uint64_t splitmix64(std::uint64_t& state);

// Seeded xoshiro256** stream. The four state words are the first four
// splitmix64 outputs starting from the 64-bit seed, so any implementation of
// those two public algorithms reproduces the sequence bit for bit.
//
// Every next_* call consumes exactly one 64-bit draw; draws() counts them so
// callers can audit draw budgets.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();

  // Top 53 bits scaled into [0, 1).
  double next_unit();

  // Uniform integer in [0, n) from a single draw: (x * n) >> 64. Bias is at
  // most n / 2^64. n must be >= 1.
  std::uint64_t next_below(std::uint64_t n);

  // lo + (hi - lo) * next_unit().
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  std::uint64_t draws() const { return draws_; }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t draws_ = 0;
};

// Per-item seed: splitmix64(global_seed ^ (kItemStride * item_index)). Both
// steps are bijections, so distinct indices never collide under one global
// seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t item_index);

}  // namespace erasekit
