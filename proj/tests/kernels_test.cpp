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

#include <random>
#include <vector>

#include "erasekit/kernels.hpp"

namespace erasekit::kernels {
namespace {

std::vector<std::uint8_t> random_bytes(std::mt19937_64& gen, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(gen());
  return v;
}

// Lengths straddling every vector width and tail size.
std::vector<std::size_t> pixel_counts() {
  std::vector<std::size_t> counts;
  for (std::size_t n = 0; n <= 130; ++n) counts.push_back(n);
  for (std::size_t n : {255u, 256u, 257u, 1000u, 4099u}) counts.push_back(n);
  return counts;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = avx2();
    if (simd_ == nullptr) GTEST_SKIP() << "AVX2 variant not available on this machine";
  }
  const KernelTable* simd_ = nullptr;
};

TEST_F(KernelEquivalence, FillPixels) {
  std::mt19937_64 gen(20);
  for (int channels : {1, 3}) {
    for (std::size_t n : pixel_counts()) {
      const auto color = random_bytes(gen, static_cast<std::size_t>(channels));
      auto a = random_bytes(gen, n * channels);
      auto b = a;
      scalar().fill_pixels(a, color);
      simd_->fill_pixels(b, color);
      ASSERT_EQ(a, b) << "channels=" << channels << " n=" << n;
    }
  }
}

TEST_F(KernelEquivalence, ReversePixels) {
  std::mt19937_64 gen(21);
  for (int channels : {1, 3}) {
    for (std::size_t n : pixel_counts()) {
      const auto src = random_bytes(gen, n * channels);
      std::vector<std::uint8_t> a(src.size()), b(src.size());
      scalar().reverse_pixels(a, src, channels);
      simd_->reverse_pixels(b, src, channels);
      ASSERT_EQ(a, b) << "channels=" << channels << " n=" << n;
    }
  }
}

TEST_F(KernelEquivalence, MarkDiff) {
  std::mt19937_64 gen(22);
  for (std::size_t n : pixel_counts()) {
    const auto x = random_bytes(gen, n);
    auto y = x;
    for (auto& v : y) {
      if (gen() % 3 == 0) v = static_cast<std::uint8_t>(v + 1 + gen() % 255);
    }
    std::vector<std::uint8_t> a(n, 7), b(n, 9);
    scalar().mark_diff(x, y, a);
    simd_->mark_diff(x, y, b);
    ASSERT_EQ(a, b) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, Increment) {
  std::mt19937_64 gen(23);
  for (std::size_t n : pixel_counts()) {
    std::vector<std::uint32_t> a(n);
    for (auto& v : a) v = static_cast<std::uint32_t>(gen());
    auto b = a;
    scalar().increment(a);
    simd_->increment(b);
    ASSERT_EQ(a, b) << "n=" << n;
  }
}

TEST(KernelScalar, ReferenceSemantics) {
  const std::vector<std::uint8_t> src = {1, 2, 3, 4, 5, 6};
  std::vector<std::uint8_t> dst(6);
  scalar().reverse_pixels(dst, src, 3);
  EXPECT_EQ(dst, (std::vector<std::uint8_t>{4, 5, 6, 1, 2, 3}));
  scalar().reverse_pixels(dst, src, 1);
  EXPECT_EQ(dst, (std::vector<std::uint8_t>{6, 5, 4, 3, 2, 1}));
  const std::vector<std::uint8_t> color = {9, 8, 7};
  scalar().fill_pixels(dst, color);
  EXPECT_EQ(dst, (std::vector<std::uint8_t>{9, 8, 7, 9, 8, 7}));
  std::vector<std::uint8_t> mask(6);
  scalar().mark_diff(src, dst, mask);
  EXPECT_EQ(mask, (std::vector<std::uint8_t>{1, 1, 1, 1, 1, 1}));
  std::vector<std::uint32_t> counts = {0, 0xFFFFFFFEu};
  scalar().increment(counts);
  EXPECT_EQ(counts, (std::vector<std::uint32_t>{1, 0xFFFFFFFFu}));
}

TEST(KernelDispatch, ActiveIsOneOfTheTables) {
  const KernelTable& t = active();
  EXPECT_TRUE(&t == &scalar() || &t == avx2());
}

}  // namespace
}  // namespace erasekit::kernels
