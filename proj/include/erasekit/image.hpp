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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace erasekit {

// Invalid dimensions, channel count or color arity.
class ImageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A region that does not lie inside the image it is applied to. Regions are
// never clipped.
class RegionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Integer rectangle in pixel coordinates; (x, y) is the top-left corner.
struct Region {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  std::int64_t area() const { return std::int64_t{w} * h; }
  bool contains(int px, int py) const {
    return px >= x && px < x + w && py >= y && py < y + h;
  }

  auto operator<=>(const Region&) const = default;
};

std::string to_string(const Region& r);

// Per-channel 8-bit constant with arity 1 (gray) or 3 (RGB).
class Color {
 public:
  Color() = default;
  // Throws ImageError if the arity is not 1 or 3 or a value is outside
  // [0, 255].
  Color(std::initializer_list<int> values);
  explicit Color(std::span<const std::uint8_t> values);

  static Color gray(std::uint8_t v) { return Color({v}); }
  static Color rgb(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return Color({r, g, b});
  }

  int channels() const { return channels_; }
  std::uint8_t operator[](int c) const { return values_[static_cast<std::size_t>(c)]; }
  std::span<const std::uint8_t> values() const {
    return {values_.data(), static_cast<std::size_t>(channels_)};
  }

  bool operator==(const Color&) const = default;

 private:
  std::array<std::uint8_t, 3> values_{};
  int channels_ = 0;
};

// Owned 8-bit raster, row-major and channel-interleaved.
class Image {
 public:
  // Throws ImageError unless width, height >= 1, channels is 1 or 3 and
  // pixels.size() == width * height * channels.
  Image(int width, int height, int channels, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::int64_t area() const { return std::int64_t{width_} * height_; }
  std::size_t size() const { return pixels_.size(); }
  std::size_t row_stride() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(channels_);
  }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> mutable_pixels() { return pixels_; }
  std::span<const std::uint8_t> row(int y) const;
  std::span<std::uint8_t> mutable_row(int y);

  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  Region bounds() const { return Region{0, 0, width_, height_}; }
  bool fits(const Region& r) const;

  bool operator==(const Image&) const = default;

 private:
  int width_;
  int height_;
  int channels_;
  std::vector<std::uint8_t> pixels_;
};

Image new_image(int width, int height, int channels, const Color& fill);

// Throws RegionError if `region` is degenerate or leaves the image.
void validate_region(const Image& img, const Region& region);

Image fill_region(const Image& img, const Region& region, const Color& color);
Image flip_horizontal(const Image& img);
Image pad(const Image& img, int margin, const Color& value);
Image crop(const Image& img, const Region& region);

// One byte per pixel: 1 where any channel of `a` and `b` differ.
class PixelMask {
 public:
  PixelMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  bool test(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::int64_t count() const;
  // Tight bounding box of the set pixels; nullopt when empty.
  std::optional<Region> bounding_box() const;
  // True when the set pixels form exactly one filled rectangle (or none).
  bool is_solid_rectangle() const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

// Throws ImageError if the two images differ in shape.
PixelMask diff_mask(const Image& a, const Image& b);

}  // namespace erasekit
