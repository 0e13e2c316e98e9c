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

// Randomized image transforms. Each one is a pure function of its inputs and
// the RngStream it is handed; the draw budget of every transform is fixed and
// documented below so composed pipelines stay replayable from one seed.

#include <optional>
#include <string>

#include "erasekit/image.hpp"
#include "erasekit/rng.hpp"
#include "erasekit/sampler.hpp"

namespace erasekit {

// Erase fill law. RandomPerPixel draws every sample of the region
// independently (one draw per sample); the other modes write a constant.
class FillMode {
 public:
  enum class Kind { kRandomPerPixel, kConstantMean, kZero, kMax };

  static FillMode random_per_pixel() { return FillMode(Kind::kRandomPerPixel); }
  // Without a color, uses default_mean_color() for the image's channel count.
  static FillMode constant_mean(std::optional<Color> color = std::nullopt);
  static FillMode zero() { return FillMode(Kind::kZero); }
  static FillMode max() { return FillMode(Kind::kMax); }

  Kind kind() const { return kind_; }
  const std::optional<Color>& mean() const { return mean_; }

  // Constant written for a `channels`-channel image. Not meaningful for
  // RandomPerPixel. A 3-channel mean applied to a gray image collapses to
  // the rounded average of its components.
  Color constant_for(int channels) const;

  bool operator==(const FillMode&) const = default;

 private:
  explicit FillMode(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::optional<Color> mean_;
};

std::string to_string(const FillMode& fill);

// ImageNet mean (125, 122, 114) for RGB; 120 for gray.
Color default_mean_color(int channels);

struct DropoutParams {
  double lambda1 = 0.0;
};

struct NoiseParams {
  double lambda2 = 0.0;
};

struct OcclusionLevel {
  double level = 0.0;
  double aspect_min = 0.3;
  double aspect_max = 3.33;
};

// What an erase call did; enough to replay it.
struct EraseRecord {
  bool gated = false;
  std::optional<Region> region;
  int attempts = 0;
};

struct EraseResult {
  Image image;
  EraseRecord record;
};

// Writes `fill` into `region`. Pixels outside the region are untouched.
// Throws RegionError if the region does not fit.
Image apply_fill(const Image& img, const Region& region, const FillMode& fill, RngStream& rng);

// In-place variant used by the composite transforms.
void apply_fill_in_place(Image& img, const Region& region, const FillMode& fill, RngStream& rng);

// Gate (1 draw), then on success the rejection sampler (4 draws per attempt)
// and the fill. NoFit leaves the image unchanged.
EraseResult random_erase_traced(const Image& img, const EraseParams& params, const FillMode& fill,
                                RngStream& rng);
Image random_erase(const Image& img, const EraseParams& params, const FillMode& fill,
                   RngStream& rng);

// Zero-pads by `margin`, then crops out_w x out_h at an integer-uniform
// offset: two draws (x offset, then y offset). Throws ImageError if the crop
// does not fit in the padded frame.
Image random_crop_with_padding(const Image& img, int margin, int out_w, int out_h, RngStream& rng);

// One draw; flips iff it is below `prob`.
Image random_flip(const Image& img, double prob, RngStream& rng);

// Per pixel: one draw; with probability lambda1 every channel becomes 0.
Image image_dropout(const Image& img, const DropoutParams& params, RngStream& rng);

// Per pixel: one draw; with probability lambda2 each channel is redrawn
// uniformly in [0, 255] (one more draw per channel).
Image random_noise(const Image& img, const NoiseParams& params, RngStream& rng);

// Fraction by which the occluder's realized area may differ from
// level * area before a proposal is rejected.
inline constexpr double kOcclusionAreaTolerance = 0.02;
inline constexpr int kOcclusionMaxAttempts = 10000;

// Test-time occluder: always overwrites one rectangle of area close to
// level * area with per-pixel random values (no gate). Uses the same
// proposal draws as the erase sampler with area fixed at `level`, and also
// rejects proposals whose rounded area misses the target by more than
// kOcclusionAreaTolerance or whose rounded aspect leaves the allowed range.
// After kOcclusionMaxAttempts the best fitting integer shape is placed
// uniformly instead.
EraseResult occlude_for_test_traced(const Image& img, const OcclusionLevel& level, RngStream& rng);
Image occlude_for_test(const Image& img, const OcclusionLevel& level, RngStream& rng);

}  // namespace erasekit
