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

// Box-aware Random Erasing for annotated detection data.
//
//   IRE    erase once over the whole frame (same as classification).
//   ORE    erase independently inside every box.
//   I+ORE  ORE, then IRE on the result.
//
// Draw order. ORE takes one draw from the caller's stream as a base seed,
// but only when the box list is non-empty; box i then runs on its own
// stream seeded with derive_seed(base, i), so a box's gate and region never
// depend on any other box. IRE draws directly from the caller's stream.

#include <optional>
#include <string>
#include <vector>

#include "erasekit/image.hpp"
#include "erasekit/rng.hpp"
#include "erasekit/sampler.hpp"
#include "erasekit/transforms.hpp"

namespace erasekit::detection {

struct BBox {
  Region region;
  std::string label;

  bool operator==(const BBox&) const = default;
};

struct AnnotatedImage {
  Image image;
  std::vector<BBox> boxes;

  // Throws RegionError if a box does not fit the image.
  void validate() const;

  bool operator==(const AnnotatedImage&) const = default;
};

enum class Scheme { kIre, kOre, kIplusOre };

const char* to_string(Scheme scheme);
// Accepts "ire", "ore", "i+ore". Throws ParamError otherwise.
Scheme parse_scheme(const std::string& name);

// One erase decision. box_index is -1 for the whole-image stage.
struct StageRecord {
  int box_index = -1;
  EraseRecord record;  // region in image coordinates
};

struct DetectionResult {
  AnnotatedImage annotated;
  std::vector<StageRecord> stages;
};

DetectionResult erase_ire_traced(const AnnotatedImage& ann, const EraseParams& params,
                                 const FillMode& fill, RngStream& rng);
DetectionResult erase_ore_traced(const AnnotatedImage& ann, const EraseParams& params,
                                 const FillMode& fill, RngStream& rng);
DetectionResult erase_i_plus_ore_traced(const AnnotatedImage& ann, const EraseParams& params,
                                        const FillMode& fill, RngStream& rng);
DetectionResult erase_traced(Scheme scheme, const AnnotatedImage& ann, const EraseParams& params,
                             const FillMode& fill, RngStream& rng);

AnnotatedImage erase_ire(const AnnotatedImage& ann, const EraseParams& params,
                         const FillMode& fill, RngStream& rng);
AnnotatedImage erase_ore(const AnnotatedImage& ann, const EraseParams& params,
                         const FillMode& fill, RngStream& rng);
AnnotatedImage erase_i_plus_ore(const AnnotatedImage& ann, const EraseParams& params,
                                const FillMode& fill, RngStream& rng);

}  // namespace erasekit::detection
