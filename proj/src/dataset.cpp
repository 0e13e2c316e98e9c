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

#include <algorithm>

#include "erasekit/pipeline.hpp"
#include "json.hpp"

namespace erasekit::pipeline {
namespace {

bool has_image_extension(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

int require_int(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw IoError(std::string("annotations: box field '") + key + "' must be an integer");
  }
  return obj[key].get<int>();
}

}  // namespace

std::vector<std::string> list_images(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && has_image_extension(entry.path())) {
      names.push_back(entry.path().filename().string());
    }
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  // std::string compares bytes, independent of locale.
  std::sort(names.begin(), names.end());
  return names;
}

std::vector<AnnotationEntry> parse_annotations(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("annotations: ") + e.what());
  }
  if (!doc.is_array()) throw IoError("annotations: top level must be an array");
  std::vector<AnnotationEntry> entries;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("image") || !item["image"].is_string()) {
      throw IoError("annotations: every entry needs an \"image\" string");
    }
    AnnotationEntry entry;
    entry.image = item["image"].get<std::string>();
    if (item.contains("boxes")) {
      if (!item["boxes"].is_array()) throw IoError("annotations: \"boxes\" must be an array");
      for (const auto& b : item["boxes"]) {
        if (!b.is_object()) throw IoError("annotations: box must be an object");
        detection::BBox box;
        box.region = Region{require_int(b, "x"), require_int(b, "y"), require_int(b, "w"),
                            require_int(b, "h")};
        if (b.contains("label")) {
          if (!b["label"].is_string()) throw IoError("annotations: label must be a string");
          box.label = b["label"].get<std::string>();
        }
        entry.boxes.push_back(std::move(box));
      }
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace erasekit::pipeline
