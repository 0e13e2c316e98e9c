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

#include "erasekit/detection.hpp"
#include "test_util.hpp"

namespace erasekit::detection {
namespace {

bool inside_some_box(const AnnotatedImage& ann, int x, int y) {
  for (const BBox& b : ann.boxes) {
    if (b.region.contains(x, y)) return true;
  }
  return false;
}

TEST(DetectionTest, ParseScheme) {
  EXPECT_EQ(parse_scheme("ire"), Scheme::kIre);
  EXPECT_EQ(parse_scheme("ore"), Scheme::kOre);
  EXPECT_EQ(parse_scheme("i+ore"), Scheme::kIplusOre);
  EXPECT_THROW(parse_scheme("IRE"), ParamError);
  EXPECT_STREQ(to_string(Scheme::kIplusOre), "i+ore");
}

TEST(DetectionTest, OreModifiesOnlyBoxPixels) {
  std::mt19937_64 gen(40);
  EraseParams p = EraseParams::detection();
  p.p = 1.0;
  for (int i = 0; i < 500; ++i) {
    const AnnotatedImage ann = testing::random_annotated(gen, 48, 4);
    RngStream rng(static_cast<std::uint64_t>(i));
    const DetectionResult r = erase_ore_traced(ann, p, FillMode::max(), rng);
    EXPECT_EQ(r.annotated.boxes, ann.boxes);
    EXPECT_EQ(r.stages.size(), ann.boxes.size());
    const PixelMask m = diff_mask(ann.image, r.annotated.image);
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) {
        if (m.test(x, y)) ASSERT_TRUE(inside_some_box(ann, x, y));
      }
    }
    for (const StageRecord& s : r.stages) {
      if (!s.record.region) continue;
      const Region& box = ann.boxes[static_cast<std::size_t>(s.box_index)].region;
      EXPECT_GE(s.record.region->x, box.x);
      EXPECT_GE(s.record.region->y, box.y);
      EXPECT_LE(s.record.region->right(), box.right());
      EXPECT_LE(s.record.region->bottom(), box.bottom());
    }
  }
}

TEST(DetectionTest, OreBoxesAreIndependentStreams) {
  std::mt19937_64 gen(41);
  EraseParams p = EraseParams::detection();
  AnnotatedImage ann{testing::random_image(gen, 64, 64, 3),
                     {{Region{0, 0, 20, 20}, "a"}, {Region{30, 30, 30, 30}, "b"}}};
  RngStream a(7);
  const DetectionResult two = erase_ore_traced(ann, p, FillMode::zero(), a);
  EXPECT_EQ(a.draws(), 1u);

  // Box 0's outcome is the same with or without box 1 present.
  AnnotatedImage first_only{ann.image, {ann.boxes[0]}};
  RngStream b(7);
  const DetectionResult one = erase_ore_traced(first_only, p, FillMode::zero(), b);
  EXPECT_EQ(one.stages[0].record.gated, two.stages[0].record.gated);
  EXPECT_EQ(one.stages[0].record.region, two.stages[0].record.region);

  // Stage 1 replays from derive_seed(base, 1).
  RngStream base_rng(7);
  const std::uint64_t base = base_rng.next_u64();
  RngStream box1(derive_seed(base, 1));
  const bool gated = gate(box1, p.p);
  EXPECT_EQ(two.stages[1].record.gated, gated);
}

TEST(DetectionTest, OreWithoutBoxesDrawsNothing) {
  const AnnotatedImage ann{new_image(10, 10, 1, Color({0})), {}};
  RngStream rng(1);
  const DetectionResult r = erase_ore_traced(ann, EraseParams::detection(), FillMode::zero(), rng);
  EXPECT_EQ(rng.draws(), 0u);
  EXPECT_EQ(r.annotated, ann);
  EXPECT_TRUE(r.stages.empty());
}

TEST(DetectionTest, IreMatchesPlainErase) {
  std::mt19937_64 gen(42);
  for (int i = 0; i < 100; ++i) {
    const AnnotatedImage ann = testing::random_annotated(gen, 40, 3);
    RngStream a(static_cast<std::uint64_t>(i));
    RngStream b(static_cast<std::uint64_t>(i));
    const DetectionResult r = erase_ire_traced(ann, EraseParams::detection(), FillMode::zero(), a);
    const Image plain = random_erase(ann.image, EraseParams::detection(), FillMode::zero(), b);
    EXPECT_EQ(r.annotated.image, plain);
    EXPECT_EQ(r.annotated.boxes, ann.boxes);
    ASSERT_EQ(r.stages.size(), 1u);
    EXPECT_EQ(r.stages[0].box_index, -1);
  }
}

TEST(DetectionTest, IplusOreIsOreThenIre) {
  std::mt19937_64 gen(43);
  EraseParams p = EraseParams::detection();
  p.p = 1.0;
  for (int i = 0; i < 100; ++i) {
    const AnnotatedImage ann = testing::random_annotated(gen, 40, 3);
    RngStream a(static_cast<std::uint64_t>(i));
    RngStream b(static_cast<std::uint64_t>(i));
    const DetectionResult both = erase_i_plus_ore_traced(ann, p, FillMode::zero(), a);
    const AnnotatedImage step = erase_ore(ann, p, FillMode::zero(), b);
    const AnnotatedImage expected = erase_ire(step, p, FillMode::zero(), b);
    EXPECT_EQ(both.annotated, expected);
    EXPECT_EQ(both.stages.size(), ann.boxes.size() + 1);
    EXPECT_EQ(both.stages.back().box_index, -1);
  }
}

TEST(DetectionTest, RejectsBoxOutsideImage) {
  const AnnotatedImage ann{new_image(10, 10, 1, Color({0})), {{Region{5, 5, 6, 2}, "x"}}};
  RngStream rng(1);
  EXPECT_THROW(erase_ore(ann, EraseParams::detection(), FillMode::zero(), rng), RegionError);
  EXPECT_THROW(erase_ire(ann, EraseParams::detection(), FillMode::zero(), rng), RegionError);
}

}  // namespace
}  // namespace erasekit::detection
