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

#include <gtest/gtest.h>

#include <set>

#include "erasekit/rng.hpp"

namespace erasekit {
namespace {

TEST(RngTest, Splitmix64KnownValue) {
  std::uint64_t s = 0;
  EXPECT_EQ(splitmix64(s), 0xE220A8397B1DCDAFULL);
}

TEST(RngTest, XoshiroSeededFromZero) {
  RngStream rng(0);
  EXPECT_EQ(rng.next_u64(), 0x99EC5F36CB75F2B4ULL);
  EXPECT_EQ(rng.next_u64(), 0xBF6E1F784956452AULL);
  EXPECT_EQ(rng.next_u64(), 0x1A5F849D4933E6E0ULL);
  EXPECT_EQ(rng.next_u64(), 0x6AA594F1262D2D2CULL);
  EXPECT_EQ(rng.draws(), 4u);
}

TEST(RngTest, UnitDraws) {
  RngStream rng(42);
  EXPECT_DOUBLE_EQ(rng.next_unit(), 0.08386297105988216);
  EXPECT_DOUBLE_EQ(rng.next_unit(), 0.3789802506626686);
  EXPECT_DOUBLE_EQ(rng.next_unit(), 0.6800434110281394);
}

TEST(RngTest, BelowUsesOneDrawEach) {
  RngStream rng(42);
  const std::uint64_t expected[] = {0, 3, 6, 9, 9, 7, 7, 8};
  for (std::uint64_t e : expected) EXPECT_EQ(rng.next_below(10), e);
  EXPECT_EQ(rng.draws(), 8u);
  RngStream one(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(one.next_below(1), 0u);
}

TEST(RngTest, DeriveSeed) {
  EXPECT_EQ(derive_seed(0x5EED, 0), 0x09F1FD9D03F0A9B4ULL);
  EXPECT_EQ(derive_seed(0x5EED, 1), 0xBF61994367A404F7ULL);
  EXPECT_EQ(derive_seed(0x5EED, 2), 0x8BF7AE6268510A62ULL);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 100000; ++i) seen.insert(derive_seed(7, i));
  EXPECT_EQ(seen.size(), 100000u);
}

TEST(RngTest, UnitRangeAndUniformBounds) {
  RngStream rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(0.3, 3.0);
    ASSERT_GE(v, 0.3);
    ASSERT_LT(v, 3.0);
  }
}

}  // namespace
}  // namespace erasekit
