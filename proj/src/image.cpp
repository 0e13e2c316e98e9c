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

#include "erasekit/image.hpp"

#include <algorithm>
#include <limits>

#include "erasekit/kernels.hpp"

namespace erasekit {
namespace {

constexpr std::int64_t kMaxSamples = std::int64_t{1} << 40;

std::size_t sample_count(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw ImageError("image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw ImageError("channel count must be 1 or 3, got " + std::to_string(channels));
  }
  const std::int64_t n = std::int64_t{width} * height * channels;
  if (n > kMaxSamples) throw ImageError("image too large");
  return static_cast<std::size_t>(n);
}

}  // namespace

std::string to_string(const Region& r) {
  return "(" + std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.w) +
         "," + std::to_string(r.h) + ")";
}

Color::Color(std::initializer_list<int> values) {
  if (values.size() != 1 && values.size() != 3) {
    throw ImageError("color arity must be 1 or 3, got " + std::to_string(values.size()));
  }
  std::size_t i = 0;
  for (int v : values) {
    if (v < 0 || v > 255) throw ImageError("color component out of [0,255]: " + std::to_string(v));
    values_[i++] = static_cast<std::uint8_t>(v);
  }
  channels_ = static_cast<int>(values.size());
}

Color::Color(std::span<const std::uint8_t> values) {
  if (values.size() != 1 && values.size() != 3) {
    throw ImageError("color arity must be 1 or 3, got " + std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), values_.begin());
  channels_ = static_cast<int>(values.size());
}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  const std::size_t expected = sample_count(width, height, channels);
  if (pixels_.size() != expected) {
    throw ImageError("pixel buffer has " + std::to_string(pixels_.size()) + " samples, expected " +
                     std::to_string(expected));
  }
}

std::span<const std::uint8_t> Image::row(int y) const {
  return std::span<const std::uint8_t>(pixels_).subspan(y * row_stride(), row_stride());
}

std::span<std::uint8_t> Image::mutable_row(int y) {
  return std::span<std::uint8_t>(pixels_).subspan(y * row_stride(), row_stride());
}

bool Image::fits(const Region& r) const {
  return r.x >= 0 && r.y >= 0 && r.w >= 1 && r.h >= 1 && r.w <= width_ - r.x &&
         r.h <= height_ - r.y;
}

Image new_image(int width, int height, int channels, const Color& fill) {
  const std::size_t n = sample_count(width, height, channels);
  if (fill.channels() != channels) {
    throw ImageError("fill arity " + std::to_string(fill.channels()) + " does not match " +
                     std::to_string(channels) + " channels");
  }
  std::vector<std::uint8_t> pixels(n);
  kernels::active().fill_pixels(pixels, fill.values());
  return Image(width, height, channels, std::move(pixels));
}

void validate_region(const Image& img, const Region& region) {
  if (!img.fits(region)) {
    throw RegionError("region " + to_string(region) + " does not fit in " +
                      std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                      " image");
  }
}

Image fill_region(const Image& img, const Region& region, const Color& color) {
  validate_region(img, region);
  if (color.channels() != img.channels()) {
    throw ImageError("fill arity does not match image channels");
  }
  Image out = img;
  const auto& k = kernels::active();
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  for (int y = region.y; y < region.bottom(); ++y) {
    auto span = out.mutable_row(y).subspan(region.x * ch, region.w * ch);
    k.fill_pixels(span, color.values());
  }
  return out;
}

Image flip_horizontal(const Image& img) {
  Image out = img;
  const auto& k = kernels::active();
  for (int y = 0; y < img.height(); ++y) {
    k.reverse_pixels(out.mutable_row(y), img.row(y), img.channels());
  }
  return out;
}

Image pad(const Image& img, int margin, const Color& value) {
  if (margin < 0) throw ImageError("pad margin must be >= 0");
  if (value.channels() != img.channels()) {
    throw ImageError("pad value arity does not match image channels");
  }
  if (margin == 0) return img;
  Image out = new_image(img.width() + 2 * margin, img.height() + 2 * margin, img.channels(), value);
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  for (int y = 0; y < img.height(); ++y) {
    auto src = img.row(y);
    auto dst = out.mutable_row(y + margin).subspan(margin * ch, src.size());
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

Image crop(const Image& img, const Region& region) {
  validate_region(img, region);
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(region.area()) * ch);
  auto dst = pixels.begin();
  for (int y = region.y; y < region.bottom(); ++y) {
    auto src = img.row(y).subspan(region.x * ch, region.w * ch);
    dst = std::copy(src.begin(), src.end(), dst);
  }
  return Image(region.w, region.h, img.channels(), std::move(pixels));
}

PixelMask::PixelMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ImageError("mask size mismatch");
  }
}

std::int64_t PixelMask::count() const {
  return std::count_if(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; });
}

std::optional<Region> PixelMask::bounding_box() const {
  int x0 = width_, y0 = height_, x1 = -1, y1 = -1;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!test(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return std::nullopt;
  return Region{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

bool PixelMask::is_solid_rectangle() const {
  const auto box = bounding_box();
  if (!box) return true;
  return count() == box->area();
}

PixelMask diff_mask(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels()) {
    throw ImageError("diff_mask: image shapes differ");
  }
  std::vector<std::uint8_t> samples(a.size());
  kernels::active().mark_diff(a.pixels(), b.pixels(), samples);
  if (a.channels() == 1) return PixelMask(a.width(), a.height(), std::move(samples));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(a.area()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = samples[3 * i] | samples[3 * i + 1] | samples[3 * i + 2];
  }
  return PixelMask(a.width(), a.height(), std::move(bits));
}

}  // namespace erasekit
