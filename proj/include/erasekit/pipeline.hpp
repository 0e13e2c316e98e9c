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

// Batch front end: job configuration, dataset runs and manifests.
//
// Items are ordered by the byte-wise order of their input names and item i
// runs on RngStream(derive_seed(seed, i)). Within an item the draws are
// consumed in a fixed order: flip (1), crop offset (2), erase gate (1), erase
// geometry (4 per attempt), fill. Outputs are therefore a function of the
// input bytes, the configuration and the seed only; --jobs never changes
// them.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "erasekit/detection.hpp"
#include "erasekit/image.hpp"
#include "erasekit/sampler.hpp"
#include "erasekit/stats.hpp"
#include "erasekit/transforms.hpp"

namespace erasekit::pipeline {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Whole-run input/output failure (unreadable dataset, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kAugment, kAugmentDet, kOcclude, kStats, kVerifyOre };

const char* to_string(Command command);

struct JobConfig {
  Command command = Command::kAugment;
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<std::filesystem::path> manifest;
  std::optional<std::filesystem::path> annotations;
  std::string preset = "classification";
  EraseParams params = EraseParams::classification();
  FillMode fill = FillMode::random_per_pixel();
  detection::Scheme scheme = detection::Scheme::kIre;
  std::vector<double> levels = {0.5};
  bool flip = false;
  bool crop = false;
  int pad = 4;
  std::uint64_t seed = 0;
  int jobs = 1;
  // stats only
  bool quick = false;
  std::optional<double> oracle_tolerance;

  // Throws UsageError on a range violation or an inconsistent combination.
  void validate() const;
};

// Thrown by parse_config for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `args` excludes the program name. Precedence: command-line flags, then the
// --config JSON file, then the preset (itself chosen by flag, file or the
// command's default). Throws UsageError before touching any dataset.
JobConfig parse_config(const std::vector<std::string>& args);

struct ItemRecord {
  std::string input;
  std::string output;
  std::uint64_t item_seed = 0;
  bool gated = false;
  std::optional<Region> region;
  int attempts = 0;
  std::optional<std::string> error;
  // Detection runs only: one entry per box and one for the image stage.
  std::vector<detection::StageRecord> stages;
};

struct Counters {
  std::uint64_t processed = 0;
  std::uint64_t erased = 0;
  std::uint64_t nofit = 0;
  std::uint64_t errors = 0;
};

struct RunManifest {
  std::uint64_t seed = 0;
  std::vector<ItemRecord> items;
  Counters counters;
};

std::string manifest_to_json(const RunManifest& manifest, const JobConfig& config);

// Single-item transforms, exactly as the batch runs apply them.
EraseResult process_augment_item(const JobConfig& config, const Image& img, std::uint64_t item_seed);
EraseResult process_occlude_item(double level, const Image& img, std::uint64_t item_seed);
detection::DetectionResult process_det_item(const JobConfig& config,
                                            const detection::AnnotatedImage& ann,
                                            std::uint64_t item_seed);

// Annotation file: [{"image": name, "boxes": [{"x","y","w","h","label"}]}].
struct AnnotationEntry {
  std::string image;
  std::vector<detection::BBox> boxes;
};
std::vector<AnnotationEntry> parse_annotations(const std::string& json_text);

// Sorted image file names (.png, .ppm, .pgm) directly inside `dir`.
std::vector<std::string> list_images(const std::filesystem::path& dir);

RunManifest run_augment(const JobConfig& config);
RunManifest run_augment_det(const JobConfig& config);
// One manifest per level. With several levels each goes to its own
// subdirectory of the output, named by level_dir_name().
std::vector<RunManifest> run_occlude(const JobConfig& config);
std::string level_dir_name(double level);
stats::ValidationReport run_stats(const JobConfig& config);

struct VerifyResult {
  std::uint64_t images = 0;
  std::uint64_t violations = 0;
  bool annotations_identical = false;
  std::vector<std::string> messages;
  bool ok() const { return violations == 0 && annotations_identical; }
};

// Checks an augment-det ORE output tree: every modified pixel lies inside a
// box and the annotation file was passed through byte for byte.
VerifyResult verify_ore(const JobConfig& config);

// Entry point of the erasekit tool. Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace erasekit::pipeline
