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

#include <stdexcept>
#include <variant>

#include "erasekit/image.hpp"
#include "erasekit/rng.hpp"

namespace erasekit {

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Random Erasing parameters. Area bounds are fractions of the frame area;
// aspect bounds are height/width ratios.
struct EraseParams {
  double p = 0.5;
  double area_min = 0.02;
  double area_max = 0.4;
  double aspect_min = 0.3;
  double aspect_max = 1.0 / 0.3;
  int max_attempts = 100;

  // p = 0.5, area in [0.02, 0.4], aspect in [0.3, 1/0.3].
  static EraseParams classification() { return EraseParams{}; }
  // Same with area_max = 0.2 (object detection and person re-id).
  static EraseParams detection() {
    EraseParams params;
    params.area_max = 0.2;
    return params;
  }

  // Throws ParamError when a field is out of range or NaN.
  void validate() const;

  bool operator==(const EraseParams&) const = default;
};

struct Accepted {
  Region region;
  int attempts = 0;
  // The real-valued draws that produced `region`, before rounding.
  double area_ratio = 0.0;
  double aspect = 0.0;
};

struct NoFit {
  int attempts = 0;
};

using SampleOutcome = std::variant<Accepted, NoFit>;

inline int attempts_of(const SampleOutcome& outcome) {
  return std::visit([](const auto& o) { return o.attempts; }, outcome);
}

// Erase decision: one unit draw u, returns u < p.
bool gate(RngStream& rng, double p);

// Round to nearest (halves away from zero), clamped to [1, 2^30].
int rounded_side(double length);

// One proposal of the rejection loop. Consumes exactly four draws, in order:
// area ratio, aspect, x, y.
struct Attempt {
  double area_ratio = 0.0;
  double aspect = 0.0;
  Region region;
  bool fits = false;
};

Attempt draw_attempt(RngStream& rng, int width, int height, double area_min, double area_max,
                     double aspect_min, double aspect_max);

// Rejection sampler for the erase rectangle inside a width x height frame.
// Gives up with NoFit after params.max_attempts proposals.
SampleOutcome sample_region(RngStream& rng, int width, int height, const EraseParams& params);

}  // namespace erasekit
