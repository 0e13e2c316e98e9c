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

#include "erasekit/transforms.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "erasekit/kernels.hpp"

namespace erasekit {
namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ParamError(std::string(name) + " must lie in [0,1]");
}

void fill_constant_in_place(Image& img, const Region& region, const Color& color) {
  const auto& k = kernels::active();
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  for (int y = region.y; y < region.bottom(); ++y) {
    k.fill_pixels(img.mutable_row(y).subspan(region.x * ch, region.w * ch), color.values());
  }
}

// Best integer shape for the occluder fallback: closest area to `target`,
// then closest to square, with aspect inside the range when any such shape
// exists.
Region best_occluder_shape(int width, int height, double target, const OcclusionLevel& level) {
  Region best{0, 0, width, height};
  double best_err = std::numeric_limits<double>::infinity();
  double best_skew = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 2 && !std::isfinite(best_err); ++pass) {
    const bool enforce_aspect = pass == 0;
    for (int h = 1; h <= height; ++h) {
      for (int w = 1; w <= width; ++w) {
        const double aspect = static_cast<double>(h) / w;
        if (enforce_aspect && (aspect < level.aspect_min || aspect > level.aspect_max)) continue;
        const double err = std::abs(static_cast<double>(w) * h - target);
        const double skew = std::abs(std::log(aspect));
        if (err < best_err || (err == best_err && skew < best_skew)) {
          best = Region{0, 0, w, h};
          best_err = err;
          best_skew = skew;
        }
      }
    }
  }
  return best;
}

}  // namespace

FillMode FillMode::constant_mean(std::optional<Color> color) {
  FillMode f(Kind::kConstantMean);
  f.mean_ = color;
  return f;
}

Color FillMode::constant_for(int channels) const {
  switch (kind_) {
    case Kind::kZero: return channels == 3 ? Color::rgb(0, 0, 0) : Color::gray(0);
    case Kind::kMax: return channels == 3 ? Color::rgb(255, 255, 255) : Color::gray(255);
    case Kind::kConstantMean: {
      if (!mean_) return default_mean_color(channels);
      if (mean_->channels() == channels) return *mean_;
      if (channels == 1) {
        const int sum = (*mean_)[0] + (*mean_)[1] + (*mean_)[2];
        return Color::gray(static_cast<std::uint8_t>((sum + 1) / 3));
      }
      return Color::rgb((*mean_)[0], (*mean_)[0], (*mean_)[0]);
    }
    case Kind::kRandomPerPixel: break;
  }
  throw ImageError("random fill has no constant color");
}

std::string to_string(const FillMode& fill) {
  switch (fill.kind()) {
    case FillMode::Kind::kRandomPerPixel: return "random";
    case FillMode::Kind::kConstantMean: return "mean";
    case FillMode::Kind::kZero: return "zero";
    case FillMode::Kind::kMax: return "max";
  }
  return "unknown";
}

Color default_mean_color(int channels) {
  return channels == 3 ? Color::rgb(125, 122, 114) : Color::gray(120);
}

void apply_fill_in_place(Image& img, const Region& region, const FillMode& fill, RngStream& rng) {
  validate_region(img, region);
  if (fill.kind() != FillMode::Kind::kRandomPerPixel) {
    fill_constant_in_place(img, region, fill.constant_for(img.channels()));
    return;
  }
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  for (int y = region.y; y < region.bottom(); ++y) {
    for (auto& sample : img.mutable_row(y).subspan(region.x * ch, region.w * ch)) {
      sample = static_cast<std::uint8_t>(rng.next_below(256));
    }
  }
}

Image apply_fill(const Image& img, const Region& region, const FillMode& fill, RngStream& rng) {
  Image out = img;
  apply_fill_in_place(out, region, fill, rng);
  return out;
}

EraseResult random_erase_traced(const Image& img, const EraseParams& params, const FillMode& fill,
                                RngStream& rng) {
  params.validate();
  EraseResult result{img, {}};
  if (!gate(rng, params.p)) return result;
  result.record.gated = true;
  const SampleOutcome outcome = sample_region(rng, img.width(), img.height(), params);
  result.record.attempts = attempts_of(outcome);
  if (const auto* accepted = std::get_if<Accepted>(&outcome)) {
    result.record.region = accepted->region;
    apply_fill_in_place(result.image, accepted->region, fill, rng);
  }
  return result;
}

Image random_erase(const Image& img, const EraseParams& params, const FillMode& fill,
                   RngStream& rng) {
  return random_erase_traced(img, params, fill, rng).image;
}

Image random_crop_with_padding(const Image& img, int margin, int out_w, int out_h, RngStream& rng) {
  if (margin < 0) throw ImageError("crop margin must be >= 0");
  const int padded_w = img.width() + 2 * margin;
  const int padded_h = img.height() + 2 * margin;
  if (out_w < 1 || out_h < 1 || out_w > padded_w || out_h > padded_h) {
    throw ImageError("crop " + std::to_string(out_w) + "x" + std::to_string(out_h) +
                     " does not fit in padded " + std::to_string(padded_w) + "x" +
                     std::to_string(padded_h) + " frame");
  }
  const Color zero = img.channels() == 3 ? Color::rgb(0, 0, 0) : Color::gray(0);
  const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(padded_w - out_w + 1)));
  const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(padded_h - out_h + 1)));
  return crop(pad(img, margin, zero), Region{x, y, out_w, out_h});
}

Image random_flip(const Image& img, double prob, RngStream& rng) {
  check_probability(prob, "flip probability");
  return rng.next_unit() < prob ? flip_horizontal(img) : img;
}

Image image_dropout(const Image& img, const DropoutParams& params, RngStream& rng) {
  check_probability(params.lambda1, "lambda1");
  Image out = img;
  auto px = out.mutable_pixels();
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  for (std::size_t i = 0; i < px.size(); i += ch) {
    if (rng.next_unit() < params.lambda1) {
      for (std::size_t c = 0; c < ch; ++c) px[i + c] = 0;
    }
  }
  return out;
}

Image random_noise(const Image& img, const NoiseParams& params, RngStream& rng) {
  check_probability(params.lambda2, "lambda2");
  Image out = img;
  auto px = out.mutable_pixels();
  const std::size_t ch = static_cast<std::size_t>(img.channels());
  for (std::size_t i = 0; i < px.size(); i += ch) {
    if (rng.next_unit() < params.lambda2) {
      for (std::size_t c = 0; c < ch; ++c) px[i + c] = static_cast<std::uint8_t>(rng.next_below(256));
    }
  }
  return out;
}

EraseResult occlude_for_test_traced(const Image& img, const OcclusionLevel& level, RngStream& rng) {
  check_probability(level.level, "occlusion level");
  if (!(level.aspect_min > 0.0 && level.aspect_min <= level.aspect_max)) {
    throw ParamError("occlusion aspect range is empty");
  }
  EraseResult result{img, {}};
  if (level.level == 0.0) return result;
  result.record.gated = true;

  const int width = img.width();
  const int height = img.height();
  const double target = level.level * static_cast<double>(img.area());
  for (int attempt = 1; attempt <= kOcclusionMaxAttempts; ++attempt) {
    const Attempt a =
        draw_attempt(rng, width, height, level.level, level.level, level.aspect_min, level.aspect_max);
    if (!a.fits) continue;
    const double area = static_cast<double>(a.region.area());
    const double aspect = static_cast<double>(a.region.h) / a.region.w;
    if (std::abs(area - target) > kOcclusionAreaTolerance * target) continue;
    if (aspect < level.aspect_min || aspect > level.aspect_max) continue;
    result.record.attempts = attempt;
    result.record.region = a.region;
    apply_fill_in_place(result.image, a.region, FillMode::random_per_pixel(), rng);
    return result;
  }

  Region shape = best_occluder_shape(width, height, target, level);
  shape.x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(width - shape.w + 1)));
  shape.y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(height - shape.h + 1)));
  result.record.attempts = kOcclusionMaxAttempts;
  result.record.region = shape;
  apply_fill_in_place(result.image, shape, FillMode::random_per_pixel(), rng);
  return result;
}

Image occlude_for_test(const Image& img, const OcclusionLevel& level, RngStream& rng) {
  return occlude_for_test_traced(img, level, rng).image;
}

}  // namespace erasekit
