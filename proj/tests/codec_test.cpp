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

#include "erasekit/codec.hpp"
#include "test_util.hpp"

namespace erasekit::codec {
namespace {

Bytes as_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

ErrorCode pnm_error(const std::string& s) {
  try {
    decode_pnm(as_bytes(s));
  } catch (const CodecError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << s;
  return ErrorCode::kIo;
}

TEST(CodecTest, PnmRoundTripIsByteExact) {
  std::mt19937_64 gen(10);
  for (int i = 0; i < 300; ++i) {
    const Image img = testing::random_image(gen, 40);
    const Bytes enc = encode_pnm(img);
    const Image dec = decode_pnm(enc);
    ASSERT_EQ(dec, img);
    ASSERT_EQ(encode_pnm(dec), enc);
  }
}

TEST(CodecTest, PnmHeaderLayout) {
  const Image img(2, 1, 1, {0, 255});
  const Bytes enc = encode_pnm(img);
  const std::string head(enc.begin(), enc.end() - 2);
  EXPECT_EQ(head, "P5\n2 1\n255\n");
  EXPECT_EQ(detect_format(enc), Format::kPnm);
}

TEST(CodecTest, PnmAcceptsCommentsAndWhitespace) {
  const Image img = decode_pnm(as_bytes("P6 # c\n 1\t1 # x\n255\n\x01\x02\x03"));
  EXPECT_EQ(img.channels(), 3);
  EXPECT_EQ(img.at(0, 0, 2), 3);
}

TEST(CodecTest, PnmErrors) {
  EXPECT_EQ(pnm_error("P6\n2 2\n255\n\x01"), ErrorCode::kTruncated);
  EXPECT_EQ(pnm_error("P6\n2"), ErrorCode::kTruncated);
  EXPECT_EQ(pnm_error("P6\nx 2 255\n"), ErrorCode::kMalformedHeader);
  EXPECT_EQ(pnm_error("P5\n0 2\n255\n"), ErrorCode::kMalformedHeader);
  EXPECT_EQ(pnm_error("P5\n1 1\n65535\n\x00\x00"), ErrorCode::kUnsupportedDepth);
  EXPECT_EQ(pnm_error("P3\n1 1\n255\n0 0 0\n"), ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(pnm_error("Q5\n1 1\n255\n\x00"), ErrorCode::kMalformedHeader);
}

TEST(CodecTest, PngRoundTripIsValueExact) {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 100; ++i) {
    const Image img = testing::random_image(gen, 40);
    const Bytes enc = encode_png(img);
    EXPECT_EQ(detect_format(enc), Format::kPng);
    ASSERT_EQ(decode_png(enc), img);
  }
}

TEST(CodecTest, PngErrors) {
  const Image img(3, 3, 3, std::vector<std::uint8_t>(27, 9));
  const Bytes enc = encode_png(img);
  const Bytes cut(enc.begin(), enc.begin() + static_cast<long>(enc.size() / 2));
  EXPECT_THROW(decode_png(cut), CodecError);
  EXPECT_THROW(decode_png(as_bytes("not a png at all")), CodecError);
  try {
    decode_png(as_bytes("nope"));
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedHeader);
  }
}

TEST(CodecTest, IdxRoundTripIsByteExact) {
  std::mt19937_64 gen(12);
  for (int i = 0; i < 50; ++i) {
    std::uniform_int_distribution<int> side(1, 30), count(1, 6);
    const int w = side(gen), h = side(gen), n = count(gen);
    std::vector<Image> images;
    for (int k = 0; k < n; ++k) images.push_back(testing::random_image(gen, w, h, 1));
    const Bytes enc = encode_idx_images(images);
    EXPECT_EQ(enc.size(), 16u + static_cast<std::size_t>(n) * w * h);
    EXPECT_EQ(enc[2], 0x08);
    EXPECT_EQ(enc[3], 0x03);
    const auto dec = decode_idx_images(enc);
    ASSERT_EQ(dec, images);
    ASSERT_EQ(encode_idx_images(dec), enc);
  }
}

TEST(CodecTest, IdxRejectsColorAndMixedShapes) {
  const Image rgb(2, 2, 3, std::vector<std::uint8_t>(12));
  const Image g1(2, 2, 1, std::vector<std::uint8_t>(4));
  const Image g2(3, 2, 1, std::vector<std::uint8_t>(6));
  EXPECT_ANY_THROW(encode_idx_images(std::vector<Image>{rgb}));
  EXPECT_ANY_THROW(encode_idx_images(std::vector<Image>{g1, g2}));
}

TEST(CodecTest, IdxErrors) {
  const Image g(2, 2, 1, {1, 2, 3, 4});
  Bytes enc = encode_idx_images(std::vector<Image>{g});
  Bytes cut(enc.begin(), enc.end() - 1);
  try {
    decode_idx_images(cut);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncated);
  }
  Bytes bad_type = enc;
  bad_type[2] = 0x0D;
  try {
    decode_idx_images(bad_type);
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDepth);
  }
}

TEST(CodecTest, IdxLabels) {
  const std::vector<std::uint8_t> labels = {3, 1, 4, 1, 5};
  const Bytes enc = encode_idx_labels(labels);
  EXPECT_EQ(enc[3], 0x01);
  EXPECT_EQ(decode_idx_labels(enc), labels);
}

TEST(CodecTest, DetectFormatRejectsUnknown) {
  try {
    detect_format(as_bytes("GIF89a"));
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFormat);
  }
}

TEST(CodecTest, FileHelpers) {
  const auto dir = testing::scratch_dir("codec");
  const Image g(2, 2, 1, {1, 2, 3, 4});
  const Bytes enc = encode_pnm(g);
  write_file_atomic(dir / "a.pgm", enc);
  EXPECT_EQ(read_file(dir / "a.pgm"), enc);
  EXPECT_FALSE(std::filesystem::exists(dir / "a.pgm.tmp"));
  try {
    read_file(dir / "missing.pgm");
    FAIL();
  } catch (const CodecError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace erasekit::codec
