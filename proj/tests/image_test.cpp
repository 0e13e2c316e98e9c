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

#include "erasekit/image.hpp"
#include "test_util.hpp"

namespace erasekit {
namespace {

TEST(ImageTest, RejectsBadShapes) {
  EXPECT_THROW(Image(0, 4, 1, {}), ImageError);
  EXPECT_THROW(Image(4, 4, 2, std::vector<std::uint8_t>(32)), ImageError);
  EXPECT_THROW(Image(4, 4, 3, std::vector<std::uint8_t>(47)), ImageError);
  EXPECT_NO_THROW(Image(4, 4, 3, std::vector<std::uint8_t>(48)));
}

TEST(ImageTest, ColorArityAndRange) {
  EXPECT_THROW(Color({1, 2}), ImageError);
  EXPECT_THROW(Color({256}), ImageError);
  EXPECT_THROW(Color({-1, 0, 0}), ImageError);
  const Color c({125, 122, 114});
  EXPECT_EQ(c.channels(), 3);
  EXPECT_EQ(c[1], 122);
}

TEST(ImageTest, NewImageFillsEveryPixel) {
  const Image img = new_image(5, 3, 3, Color({1, 2, 3}));
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 5; ++x) {
      EXPECT_EQ(img.at(x, y, 0), 1);
      EXPECT_EQ(img.at(x, y, 2), 3);
    }
  }
  EXPECT_THROW(new_image(5, 3, 1, Color({1, 2, 3})), ImageError);
}

TEST(ImageTest, ValidateRegion) {
  const Image img = new_image(10, 8, 1, Color({0}));
  EXPECT_NO_THROW(validate_region(img, Region{0, 0, 10, 8}));
  EXPECT_NO_THROW(validate_region(img, Region{9, 7, 1, 1}));
  EXPECT_THROW(validate_region(img, Region{9, 7, 2, 1}), RegionError);
  EXPECT_THROW(validate_region(img, Region{-1, 0, 1, 1}), RegionError);
  EXPECT_THROW(validate_region(img, Region{0, 0, 0, 1}), RegionError);
}

TEST(ImageTest, FillRegionTouchesOnlyTheRegion) {
  std::mt19937_64 gen(1);
  const Image img = testing::random_image(gen, 17, 11, 3);
  const Region r{3, 2, 9, 5};
  const Image out = fill_region(img, r, Color({7, 8, 9}));
  for (int y = 0; y < 11; ++y) {
    for (int x = 0; x < 17; ++x) {
      for (int c = 0; c < 3; ++c) {
        if (r.contains(x, y)) {
          EXPECT_EQ(out.at(x, y, c), 7 + c);
        } else {
          EXPECT_EQ(out.at(x, y, c), img.at(x, y, c));
        }
      }
    }
  }
}

TEST(ImageTest, FlipIsAnInvolutionAndMirrorsColumns) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 50; ++i) {
    const Image img = testing::random_image(gen, 70);
    const Image f = flip_horizontal(img);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        for (int c = 0; c < img.channels(); ++c) {
          ASSERT_EQ(f.at(x, y, c), img.at(img.width() - 1 - x, y, c));
        }
      }
    }
    EXPECT_EQ(flip_horizontal(f), img);
  }
}

TEST(ImageTest, PadThenCropRecoversTheImage) {
  std::mt19937_64 gen(3);
  const Image img = testing::random_image(gen, 6, 4, 3);
  const Image padded = pad(img, 2, Color({0, 0, 0}));
  EXPECT_EQ(padded.width(), 10);
  EXPECT_EQ(padded.height(), 8);
  EXPECT_EQ(padded.at(0, 0, 1), 0);
  EXPECT_EQ(padded.at(9, 7, 2), 0);
  EXPECT_EQ(crop(padded, Region{2, 2, 6, 4}), img);
  EXPECT_THROW(crop(img, Region{1, 0, 6, 4}), RegionError);
}

TEST(ImageTest, DiffMaskOrsChannels) {
  Image a = new_image(4, 3, 3, Color({10, 10, 10}));
  Image b = a;
  b.at(1, 1, 2) = 11;
  b.at(2, 1, 0) = 0;
  const PixelMask m = diff_mask(a, b);
  EXPECT_EQ(m.count(), 2);
  EXPECT_TRUE(m.test(1, 1));
  EXPECT_TRUE(m.test(2, 1));
  ASSERT_TRUE(m.bounding_box().has_value());
  EXPECT_EQ(*m.bounding_box(), (Region{1, 1, 2, 1}));
  EXPECT_TRUE(m.is_solid_rectangle());
  b.at(0, 0, 0) = 0;
  EXPECT_FALSE(diff_mask(a, b).is_solid_rectangle());
  EXPECT_FALSE(diff_mask(a, a).bounding_box().has_value());
  EXPECT_TRUE(diff_mask(a, a).is_solid_rectangle());
  EXPECT_THROW(diff_mask(a, new_image(4, 3, 1, Color({0}))), ImageError);
}

TEST(ImageTest, RegionToString) { EXPECT_EQ(to_string(Region{1, 2, 3, 4}), "(1,2,3,4)"); }

}  // namespace
}  // namespace erasekit
