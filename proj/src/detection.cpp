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

#include "erasekit/detection.hpp"

namespace erasekit::detection {

void AnnotatedImage::validate() const {
  for (const BBox& box : boxes) validate_region(image, box.region);
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kIre: return "ire";
    case Scheme::kOre: return "ore";
    case Scheme::kIplusOre: return "i+ore";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "ire") return Scheme::kIre;
  if (name == "ore") return Scheme::kOre;
  if (name == "i+ore") return Scheme::kIplusOre;
  throw ParamError("unknown scheme '" + name + "' (expected ire, ore or i+ore)");
}

DetectionResult erase_ire_traced(const AnnotatedImage& ann, const EraseParams& params,
                                 const FillMode& fill, RngStream& rng) {
  ann.validate();
  EraseResult r = random_erase_traced(ann.image, params, fill, rng);
  DetectionResult out{AnnotatedImage{std::move(r.image), ann.boxes}, {}};
  out.stages.push_back(StageRecord{-1, r.record});
  return out;
}

DetectionResult erase_ore_traced(const AnnotatedImage& ann, const EraseParams& params,
                                 const FillMode& fill, RngStream& rng) {
  ann.validate();
  params.validate();
  DetectionResult out{ann, {}};
  if (ann.boxes.empty()) return out;
  const std::uint64_t base = rng.next_u64();
  for (std::size_t i = 0; i < ann.boxes.size(); ++i) {
    const Region& box = ann.boxes[i].region;
    RngStream box_rng(derive_seed(base, i));
    StageRecord stage{static_cast<int>(i), {}};
    if (gate(box_rng, params.p)) {
      stage.record.gated = true;
      const SampleOutcome outcome = sample_region(box_rng, box.w, box.h, params);
      stage.record.attempts = attempts_of(outcome);
      if (const auto* accepted = std::get_if<Accepted>(&outcome)) {
        Region region = accepted->region;
        region.x += box.x;
        region.y += box.y;
        stage.record.region = region;
        apply_fill_in_place(out.annotated.image, region, fill, box_rng);
      }
    }
    out.stages.push_back(stage);
  }
  return out;
}

DetectionResult erase_i_plus_ore_traced(const AnnotatedImage& ann, const EraseParams& params,
                                        const FillMode& fill, RngStream& rng) {
  DetectionResult ore = erase_ore_traced(ann, params, fill, rng);
  DetectionResult ire = erase_ire_traced(ore.annotated, params, fill, rng);
  ore.stages.insert(ore.stages.end(), ire.stages.begin(), ire.stages.end());
  return DetectionResult{std::move(ire.annotated), std::move(ore.stages)};
}

DetectionResult erase_traced(Scheme scheme, const AnnotatedImage& ann, const EraseParams& params,
                             const FillMode& fill, RngStream& rng) {
  switch (scheme) {
    case Scheme::kIre: return erase_ire_traced(ann, params, fill, rng);
    case Scheme::kOre: return erase_ore_traced(ann, params, fill, rng);
    case Scheme::kIplusOre: return erase_i_plus_ore_traced(ann, params, fill, rng);
  }
  throw ParamError("unknown scheme");
}

AnnotatedImage erase_ire(const AnnotatedImage& ann, const EraseParams& params,
                         const FillMode& fill, RngStream& rng) {
  return erase_ire_traced(ann, params, fill, rng).annotated;
}

AnnotatedImage erase_ore(const AnnotatedImage& ann, const EraseParams& params,
                         const FillMode& fill, RngStream& rng) {
  return erase_ore_traced(ann, params, fill, rng).annotated;
}

AnnotatedImage erase_i_plus_ore(const AnnotatedImage& ann, const EraseParams& params,
                                const FillMode& fill, RngStream& rng) {
  return erase_i_plus_ore_traced(ann, params, fill, rng).annotated;
}

}  // namespace erasekit::detection
