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

#include "erasekit/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "erasekit/codec.hpp"
#include "erasekit/parallel.hpp"
#include "json.hpp"

namespace erasekit::pipeline {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kManifestName = "manifest.json";
constexpr const char* kAnnotationsName = "annotations.json";

struct LoadedImage {
  Image image;
  codec::Format format;
  codec::Bytes bytes;
};

LoadedImage load_image_file(const fs::path& path) {
  codec::Bytes bytes = codec::read_file(path);
  const codec::Format format = codec::detect_format(bytes);
  Image image = codec::decode_image(bytes);
  return LoadedImage{std::move(image), format, std::move(bytes)};
}

// Untouched images are copied byte for byte so that a no-op run reproduces
// its input exactly, whatever encoder produced it.
void write_output(const fs::path& path, const LoadedImage& in, const Image& out) {
  if (out == in.image) {
    codec::write_file_atomic(path, in.bytes);
  } else {
    codec::write_file_atomic(path, codec::encode_image(out, in.format));
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void apply_record(ItemRecord& rec, const EraseRecord& r) {
  rec.gated = r.gated;
  rec.region = r.region;
  rec.attempts = r.attempts;
}

Json region_json(const std::optional<Region>& r) {
  if (!r) return Json(nullptr);
  return Json::array({r->x, r->y, r->w, r->h});
}

void finalize_counters(RunManifest& m) {
  m.counters = Counters{};
  m.counters.processed = m.items.size();
  for (const ItemRecord& rec : m.items) {
    if (rec.error) {
      ++m.counters.errors;
      continue;
    }
    if (rec.stages.empty()) {
      if (rec.region) ++m.counters.erased;
      if (rec.gated && !rec.region) ++m.counters.nofit;
      continue;
    }
    bool erased = false;
    for (const auto& stage : rec.stages) {
      erased = erased || stage.record.region.has_value();
      if (stage.record.gated && !stage.record.region) ++m.counters.nofit;
    }
    if (erased) ++m.counters.erased;
  }
}

void write_manifest(const fs::path& path, const RunManifest& m, const JobConfig& config) {
  const std::string text = manifest_to_json(m, config);
  codec::write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

using ItemFn = std::function<EraseResult(const Image&, std::uint64_t)>;

// Runs `fn` over a directory of images or the images of one IDX file.
RunManifest run_images(const JobConfig& config, const fs::path& out_dir, const ItemFn& fn) {
  ensure_directory(out_dir);
  RunManifest manifest;
  manifest.seed = config.seed;

  if (fs::is_regular_file(config.input)) {
    const std::string name = config.input.filename().string();
    codec::Bytes bytes;
    std::vector<Image> images;
    try {
      bytes = codec::read_file(config.input);
      images = codec::decode_idx_images(bytes);
    } catch (const std::exception& e) {
      throw IoError(config.input.string() + ": " + e.what());
    }
    manifest.items.resize(images.size());
    std::vector<Image> outputs(images.begin(), images.end());
    parallel_for(images.size(), config.jobs, [&](std::size_t i) {
      ItemRecord& rec = manifest.items[i];
      rec.input = rec.output = name + "#" + std::to_string(i);
      rec.item_seed = derive_seed(config.seed, i);
      try {
        EraseResult r = fn(images[i], rec.item_seed);
        apply_record(rec, r.record);
        outputs[i] = std::move(r.image);
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
    });
    try {
      if (outputs.empty() || outputs == images) {
        codec::write_file_atomic(out_dir / name, bytes);
      } else {
        codec::save_idx_images(out_dir / name, outputs);
      }
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
    finalize_counters(manifest);
    return manifest;
  }

  const std::vector<std::string> names = list_images(config.input);
  manifest.items.resize(names.size());
  parallel_for(names.size(), config.jobs, [&](std::size_t i) {
    ItemRecord& rec = manifest.items[i];
    rec.input = rec.output = names[i];
    rec.item_seed = derive_seed(config.seed, i);
    try {
      const LoadedImage in = load_image_file(config.input / names[i]);
      const EraseResult r = fn(in.image, rec.item_seed);
      apply_record(rec, r.record);
      write_output(out_dir / names[i], in, r.image);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });
  finalize_counters(manifest);
  return manifest;
}

fs::path annotations_path(const JobConfig& config) {
  return config.annotations.value_or(config.input / kAnnotationsName);
}

std::string read_text(const fs::path& path) {
  try {
    const codec::Bytes bytes = codec::read_file(path);
    return std::string(bytes.begin(), bytes.end());
  } catch (const codec::CodecError& e) {
    throw IoError(e.what());
  }
}

}  // namespace

const char* to_string(Command command) {
  switch (command) {
    case Command::kAugment: return "augment";
    case Command::kAugmentDet: return "augment-det";
    case Command::kOcclude: return "occlude";
    case Command::kStats: return "stats";
    case Command::kVerifyOre: return "verify-ore";
  }
  return "unknown";
}

std::string level_dir_name(double level) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "level_%g", level);
  return buf;
}

std::string manifest_to_json(const RunManifest& m, const JobConfig& config) {
  Json doc;
  doc["seed"] = m.seed;

  Json cfg;
  cfg["command"] = to_string(config.command);
  cfg["preset"] = config.preset;
  if (config.command == Command::kOcclude) {
    cfg["levels"] = config.levels;
  } else {
    cfg["p"] = config.params.p;
    cfg["area_min"] = config.params.area_min;
    cfg["area_max"] = config.params.area_max;
    cfg["aspect_min"] = config.params.aspect_min;
    cfg["aspect_max"] = config.params.aspect_max;
    cfg["attempts"] = config.params.max_attempts;
    cfg["fill"] = to_string(config.fill);
    if (config.fill.mean()) {
      const auto values = config.fill.mean()->values();
      cfg["mean"] = std::vector<int>(values.begin(), values.end());
    }
  }
  if (config.command == Command::kAugment) {
    cfg["flip"] = config.flip;
    cfg["crop"] = config.crop;
    cfg["pad"] = config.pad;
  }
  if (config.command == Command::kAugmentDet) cfg["scheme"] = detection::to_string(config.scheme);
  doc["config"] = std::move(cfg);

  Json items = Json::array();
  for (const ItemRecord& rec : m.items) {
    Json j;
    j["input"] = rec.input;
    j["output"] = rec.output;
    j["item_seed"] = rec.item_seed;
    j["gated"] = rec.gated;
    j["region"] = region_json(rec.region);
    j["attempts"] = rec.attempts;
    if (rec.error) j["error"] = *rec.error;
    if (!rec.stages.empty()) {
      Json stages = Json::array();
      for (const auto& s : rec.stages) {
        Json st;
        st["stage"] = s.box_index < 0 ? "image" : "object";
        st["box"] = s.box_index < 0 ? Json(nullptr) : Json(s.box_index);
        st["gated"] = s.record.gated;
        st["region"] = region_json(s.record.region);
        st["attempts"] = s.record.attempts;
        stages.push_back(std::move(st));
      }
      j["stages"] = std::move(stages);
    }
    items.push_back(std::move(j));
  }
  doc["items"] = std::move(items);
  doc["counters"] = Json{{"processed", m.counters.processed},
                         {"erased", m.counters.erased},
                         {"nofit", m.counters.nofit},
                         {"errors", m.counters.errors}};
  return doc.dump(2) + "\n";
}

EraseResult process_augment_item(const JobConfig& config, const Image& input,
                                 std::uint64_t item_seed) {
  RngStream rng(item_seed);
  Image img = input;
  if (config.flip) img = random_flip(img, 0.5, rng);
  if (config.crop) img = random_crop_with_padding(img, config.pad, img.width(), img.height(), rng);
  return random_erase_traced(img, config.params, config.fill, rng);
}

EraseResult process_occlude_item(double level, const Image& img, std::uint64_t item_seed) {
  RngStream rng(item_seed);
  return occlude_for_test_traced(img, OcclusionLevel{level}, rng);
}

detection::DetectionResult process_det_item(const JobConfig& config,
                                            const detection::AnnotatedImage& ann,
                                            std::uint64_t item_seed) {
  RngStream rng(item_seed);
  return detection::erase_traced(config.scheme, ann, config.params, config.fill, rng);
}

RunManifest run_augment(const JobConfig& config) {
  config.validate();
  RunManifest m = run_images(config, config.output, [&](const Image& img, std::uint64_t seed) {
    return process_augment_item(config, img, seed);
  });
  write_manifest(config.manifest.value_or(config.output / kManifestName), m, config);
  return m;
}

std::vector<RunManifest> run_occlude(const JobConfig& config) {
  config.validate();
  std::vector<RunManifest> manifests;
  const bool sweep = config.levels.size() > 1;
  for (const double level : config.levels) {
    const fs::path out_dir = sweep ? config.output / level_dir_name(level) : config.output;
    RunManifest m = run_images(config, out_dir, [level](const Image& img, std::uint64_t seed) {
      return process_occlude_item(level, img, seed);
    });
    const fs::path manifest_path =
        (!sweep && config.manifest) ? *config.manifest : out_dir / kManifestName;
    JobConfig level_config = config;
    level_config.levels = {level};
    write_manifest(manifest_path, m, level_config);
    manifests.push_back(std::move(m));
  }
  return manifests;
}

RunManifest run_augment_det(const JobConfig& config) {
  config.validate();
  ensure_directory(config.output);
  const fs::path ann_path = annotations_path(config);
  const std::string ann_text = read_text(ann_path);
  const std::vector<AnnotationEntry> entries = parse_annotations(ann_text);

  std::map<std::string, std::vector<detection::BBox>> boxes_by_image;
  for (const AnnotationEntry& e : entries) {
    if (!boxes_by_image.emplace(e.image, e.boxes).second) {
      throw IoError("annotations: duplicate entry for " + e.image);
    }
  }
  std::set<std::string> name_set;
  for (const std::string& n : list_images(config.input)) name_set.insert(n);
  for (const auto& [name, boxes] : boxes_by_image) name_set.insert(name);
  const std::vector<std::string> names(name_set.begin(), name_set.end());

  RunManifest manifest;
  manifest.seed = config.seed;
  manifest.items.resize(names.size());
  parallel_for(names.size(), config.jobs, [&](std::size_t i) {
    ItemRecord& rec = manifest.items[i];
    rec.input = rec.output = names[i];
    rec.item_seed = derive_seed(config.seed, i);
    try {
      const fs::path in_path = config.input / names[i];
      if (!fs::exists(in_path)) throw IoError("image listed in annotations is missing: " + names[i]);
      const LoadedImage in = load_image_file(in_path);
      detection::AnnotatedImage ann{in.image, {}};
      if (auto it = boxes_by_image.find(names[i]); it != boxes_by_image.end()) ann.boxes = it->second;
      const detection::DetectionResult r = process_det_item(config, ann, rec.item_seed);
      rec.stages = r.stages;
      for (const auto& s : r.stages) {
        if (s.box_index < 0) {
          apply_record(rec, s.record);
        } else if (config.scheme == detection::Scheme::kOre) {
          rec.gated = rec.gated || s.record.gated;
          rec.attempts += s.record.attempts;
        }
      }
      write_output(config.output / names[i], in, r.annotated.image);
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });
  finalize_counters(manifest);

  try {
    codec::write_file_atomic(config.output / kAnnotationsName,
                             std::span(reinterpret_cast<const std::uint8_t*>(ann_text.data()),
                                       ann_text.size()));
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  write_manifest(config.manifest.value_or(config.output / kManifestName), manifest, config);
  return manifest;
}

stats::ValidationReport run_stats(const JobConfig& config) {
  config.validate();
  stats::SuiteConfig suite = config.quick ? stats::SuiteConfig::quick() : stats::SuiteConfig{};
  suite.seed = config.seed;
  suite.jobs = config.jobs;
  suite.oracle_tolerance = config.oracle_tolerance;
  const stats::ValidationReport report = stats::run_validation(suite);
  const std::string text = stats::to_json(report);
  if (config.output.has_parent_path()) ensure_directory(config.output.parent_path());
  try {
    codec::write_file_atomic(config.output,
                             std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
  return report;
}

VerifyResult verify_ore(const JobConfig& config) {
  VerifyResult result;
  const fs::path ann_path = annotations_path(config);
  const std::string ann_text = read_text(ann_path);
  const std::vector<AnnotationEntry> entries = parse_annotations(ann_text);
  try {
    result.annotations_identical = read_text(config.output / kAnnotationsName) == ann_text;
  } catch (const IoError&) {
    result.annotations_identical = false;
  }
  if (!result.annotations_identical) result.messages.push_back("annotations differ or missing");

  for (const AnnotationEntry& e : entries) {
    const fs::path in_path = config.input / e.image;
    const fs::path out_path = config.output / e.image;
    if (!fs::exists(in_path) || !fs::exists(out_path)) continue;
    const Image before = codec::decode_image(codec::read_file(in_path));
    const Image after = codec::decode_image(codec::read_file(out_path));
    ++result.images;
    const PixelMask mask = diff_mask(before, after);
    std::uint64_t outside = 0;
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) {
        if (!mask.test(x, y)) continue;
        const bool inside = std::any_of(e.boxes.begin(), e.boxes.end(),
                                        [&](const detection::BBox& b) { return b.region.contains(x, y); });
        if (!inside) ++outside;
      }
    }
    if (outside > 0) {
      ++result.violations;
      result.messages.push_back(e.image + ": " + std::to_string(outside) +
                                " modified pixels outside every box");
    }
  }
  return result;
}

}  // namespace erasekit::pipeline
