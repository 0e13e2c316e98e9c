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

#include "erasekit/sampler.hpp"

#include <cmath>
#include <string>

namespace erasekit {
namespace {

constexpr double kMaxSide = 1 << 30;

bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

}  // namespace

void EraseParams::validate() const {
  if (!in_range(p, 0.0, 1.0)) throw ParamError("p must lie in [0,1]");
  if (!(area_min > 0.0 && area_min <= 1.0)) throw ParamError("area_min must lie in (0,1]");
  if (!(area_max > 0.0 && area_max <= 1.0)) throw ParamError("area_max must lie in (0,1]");
  if (area_min > area_max) throw ParamError("area_min must not exceed area_max");
  if (!(aspect_min > 0.0 && std::isfinite(aspect_min))) throw ParamError("aspect_min must be > 0");
  if (!(aspect_max > 0.0 && std::isfinite(aspect_max))) throw ParamError("aspect_max must be > 0");
  if (aspect_min > aspect_max) throw ParamError("aspect_min must not exceed aspect_max");
  if (max_attempts < 1) throw ParamError("max_attempts must be >= 1");
}

bool gate(RngStream& rng, double p) { return rng.next_unit() < p; }

int rounded_side(double length) {
  const double r = std::round(length);
  if (!(r >= 1.0)) return 1;
  if (r > kMaxSide) return static_cast<int>(kMaxSide);
  return static_cast<int>(r);
}

Attempt draw_attempt(RngStream& rng, int width, int height, double area_min, double area_max,
                     double aspect_min, double aspect_max) {
  Attempt a;
  a.area_ratio = rng.uniform(area_min, area_max);
  a.aspect = rng.uniform(aspect_min, aspect_max);
  const double target_area = a.area_ratio * static_cast<double>(width) * static_cast<double>(height);
  const int h = rounded_side(std::sqrt(target_area * a.aspect));
  const int w = rounded_side(std::sqrt(target_area / a.aspect));
  const int x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(width)));
  const int y = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(height)));
  a.region = Region{x, y, w, h};
  a.fits = w <= width - x && h <= height - y;
  return a;
}

SampleOutcome sample_region(RngStream& rng, int width, int height, const EraseParams& params) {
  for (int attempt = 1; attempt <= params.max_attempts; ++attempt) {
    const Attempt a = draw_attempt(rng, width, height, params.area_min, params.area_max,
                                   params.aspect_min, params.aspect_max);
    if (a.fits) return Accepted{a.region, attempt, a.area_ratio, a.aspect};
  }
  return NoFit{params.max_attempts};
}

}  // namespace erasekit
