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
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "erasekit/codec.hpp"
#include "erasekit/pipeline.hpp"
#include "json.hpp"

namespace erasekit::pipeline {
namespace {

namespace fs = std::filesystem;

Command parse_command(const std::string& name) {
  if (name == "augment") return Command::kAugment;
  if (name == "augment-det") return Command::kAugmentDet;
  if (name == "occlude") return Command::kOcclude;
  if (name == "stats") return Command::kStats;
  if (name == "verify-ore") return Command::kVerifyOre;
  throw UsageError("unknown command '" + name + "'");
}

EraseParams preset_params(const std::string& name) {
  if (name == "classification") return EraseParams::classification();
  if (name == "detection") return EraseParams::detection();
  throw UsageError("unknown preset '" + name + "' (expected classification or detection)");
}

FillMode parse_fill(const std::string& name, std::optional<Color> mean) {
  if (name == "random") return FillMode::random_per_pixel();
  if (name == "mean") return FillMode::constant_mean(mean);
  if (name == "zero") return FillMode::zero();
  if (name == "max") return FillMode::max();
  throw UsageError("unknown fill '" + name + "' (expected random, mean, zero or max)");
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  return parts;
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("bad ") + what + " value '" + text + "'");
  }
}

Color parse_mean(const std::string& text) {
  std::vector<int> values;
  for (const std::string& part : split_commas(text)) {
    const double v = parse_double(part, "--mean");
    if (v != static_cast<int>(v) || v < 0 || v > 255) {
      throw UsageError("--mean components must be integers in [0,255]");
    }
    values.push_back(static_cast<int>(v));
  }
  if (values.size() == 1) return Color({values[0]});
  if (values.size() == 3) return Color({values[0], values[1], values[2]});
  throw UsageError("--mean takes 1 or 3 components");
}

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> levels;
  for (const std::string& part : split_commas(text)) levels.push_back(parse_double(part, "--level"));
  return levels;
}

// Reads a JSON value from the config file as T, or throws UsageError.
template <typename T>
T file_value(const nlohmann::json& file, const char* key) {
  try {
    return file.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config file: bad value for '") + key + "'");
  }
}

// Flag value if given on the command line, else config-file value, else
// keep `target`.
template <typename T>
void merge(T& target, const CLI::Option* flag, const T& flag_value, const nlohmann::json& file,
           const char* key) {
  if (flag->count() > 0) {
    target = flag_value;
  } else if (file.contains(key)) {
    target = file_value<T>(file, key);
  }
}

std::string file_string_or_list(const nlohmann::json& file, const char* key) {
  const auto& v = file.at(key);
  if (v.is_string()) return v.get<std::string>();
  std::string joined;
  const auto append = [&](const nlohmann::json& item) {
    if (!item.is_number()) throw UsageError(std::string("config file: bad value for '") + key + "'");
    if (!joined.empty()) joined += ",";
    std::ostringstream os;
    os.precision(17);
    os << item.get<double>();
    joined += os.str();
  };
  if (v.is_array()) {
    for (const auto& item : v) append(item);
  } else {
    append(v);
  }
  return joined;
}

void print_manifest_summary(const RunManifest& m, std::ostream& os) {
  os << "processed " << m.counters.processed << ", erased " << m.counters.erased << ", nofit "
     << m.counters.nofit << ", errors " << m.counters.errors << "\n";
  for (const ItemRecord& rec : m.items) {
    if (rec.error) os << "  error: " << rec.input << ": " << *rec.error << "\n";
  }
}

}  // namespace

void JobConfig::validate() const {
  try {
    params.validate();
  } catch (const ParamError& e) {
    throw UsageError(e.what());
  }
  if (jobs < 1) throw UsageError("--jobs must be >= 1");
  if (pad < 0) throw UsageError("--pad must be >= 0");
  if (output.empty()) throw UsageError("--out is required");
  if (command == Command::kOcclude) {
    if (levels.empty()) throw UsageError("--level needs at least one value");
    for (double l : levels) {
      if (!(l >= 0.0 && l <= 1.0)) throw UsageError("--level values must lie in [0,1]");
    }
  }
  if (command == Command::kAugmentDet && (flip || crop)) {
    throw UsageError("--flip/--crop are not supported by augment-det (boxes would move)");
  }
  if (oracle_tolerance && !(*oracle_tolerance >= 0.0)) {
    throw UsageError("--oracle-tolerance must be >= 0");
  }
  if (command == Command::kStats) return;
  if (input.empty()) throw UsageError("--in is required");
  if (!fs::exists(input)) throw UsageError("input does not exist: " + input.string());
  std::error_code ec;
  if (fs::weakly_canonical(input, ec) == fs::weakly_canonical(output, ec)) {
    throw UsageError("--in and --out must be different paths");
  }
  if (command == Command::kAugmentDet || command == Command::kVerifyOre) {
    if (!fs::is_directory(input)) throw UsageError("--in must be a directory for " +
                                                   std::string(pipeline::to_string(command)));
  }
}

JobConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Random Erasing data augmentation toolkit", "erasekit"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string command_name, in, out, manifest, annotations, config_path, preset, fill, mean,
      scheme, level;
  double p = 0, area_min = 0, area_max = 0, aspect_min = 0, aspect_max = 0, oracle_tolerance = 0;
  bool flip = false, crop = false, quick = false;
  int pad = 0, attempts = 0, jobs = 0;
  std::uint64_t seed = 0;

  app.add_option("command", command_name, "augment | augment-det | occlude | stats | verify-ore")
      ->required()
      ->check(CLI::IsMember({"augment", "augment-det", "occlude", "stats", "verify-ore"}));
  auto* o_in = app.add_option("--in", in, "Input directory or IDX file");
  auto* o_out = app.add_option("--out", out, "Output directory (report file for stats)");
  auto* o_manifest = app.add_option("--manifest", manifest, "Manifest path [OUT/manifest.json]");
  auto* o_annotations =
      app.add_option("--annotations", annotations, "Annotation JSON [IN/annotations.json]");
  auto* o_config = app.add_option("--config", config_path, "JSON file with default option values");
  auto* o_preset = app.add_option("--preset", preset, "classification | detection");
  auto* o_p = app.add_option("--p", p, "Erasing probability");
  auto* o_area_min = app.add_option("--area-min", area_min, "Minimum erased area fraction");
  auto* o_area_max = app.add_option("--area-max", area_max, "Maximum erased area fraction");
  auto* o_aspect_min = app.add_option("--aspect-min", aspect_min, "Minimum aspect (h/w)");
  auto* o_aspect_max = app.add_option("--aspect-max", aspect_max, "Maximum aspect (h/w)");
  auto* o_fill = app.add_option("--fill", fill, "random | mean | zero | max");
  auto* o_mean = app.add_option("--mean", mean, "Mean fill color R,G,B (or V for gray)");
  auto* o_scheme = app.add_option("--scheme", scheme, "ire | ore | i+ore (augment-det)");
  auto* o_level = app.add_option("--level", level, "Occlusion level(s), comma separated");
  auto* o_flip = app.add_flag("--flip", flip, "Random horizontal flip before erasing");
  auto* o_crop = app.add_flag("--crop", crop, "Random crop from a zero-padded image");
  auto* o_pad = app.add_option("--pad", pad, "Padding for --crop [4]");
  auto* o_seed = app.add_option("--seed", seed, "Global 64-bit seed [0]");
  auto* o_attempts = app.add_option("--attempts", attempts, "Rejection attempts cap [100]");
  auto* o_jobs = app.add_option("--jobs", jobs, "Worker threads [1]");
  auto* o_quick = app.add_flag("--quick", quick, "stats: reduced trial counts");
  auto* o_oracle_tol =
      app.add_option("--oracle-tolerance", oracle_tolerance, "stats: override oracle tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  JobConfig config;
  config.command = parse_command(command_name);

  nlohmann::json file = nlohmann::json::object();
  if (o_config->count() > 0) {
    try {
      const codec::Bytes bytes = codec::read_file(config_path);
      file = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const std::exception& e) {
      throw UsageError("cannot read config file " + config_path + ": " + e.what());
    }
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    static const std::vector<std::string> known = {
        "in", "out", "manifest", "annotations", "preset", "p", "area-min", "area-max",
        "aspect-min", "aspect-max", "fill", "mean", "scheme", "level", "flip", "crop", "pad",
        "seed", "attempts", "jobs", "quick", "oracle-tolerance"};
    for (const auto& [key, value] : file.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw UsageError("config file: unknown key '" + key + "'");
      }
    }
  }

  config.preset = config.command == Command::kAugmentDet ? "detection" : "classification";
  merge(config.preset, o_preset, preset, file, "preset");
  config.params = preset_params(config.preset);

  std::string in_s, out_s;
  merge(in_s, o_in, in, file, "in");
  merge(out_s, o_out, out, file, "out");
  config.input = in_s;
  config.output = out_s;
  std::string manifest_s, annotations_s;
  merge(manifest_s, o_manifest, manifest, file, "manifest");
  merge(annotations_s, o_annotations, annotations, file, "annotations");
  if (!manifest_s.empty()) config.manifest = manifest_s;
  if (!annotations_s.empty()) config.annotations = annotations_s;

  merge(config.params.p, o_p, p, file, "p");
  merge(config.params.area_min, o_area_min, area_min, file, "area-min");
  merge(config.params.area_max, o_area_max, area_max, file, "area-max");
  merge(config.params.aspect_min, o_aspect_min, aspect_min, file, "aspect-min");
  merge(config.params.aspect_max, o_aspect_max, aspect_max, file, "aspect-max");
  merge(config.params.max_attempts, o_attempts, attempts, file, "attempts");

  std::string fill_s = "random";
  merge(fill_s, o_fill, fill, file, "fill");
  std::string mean_s;
  if (o_mean->count() > 0) {
    mean_s = mean;
  } else if (file.contains("mean")) {
    mean_s = file_string_or_list(file, "mean");
  }
  std::optional<Color> mean_color;
  if (!mean_s.empty()) {
    if (fill_s != "mean") throw UsageError("--mean only applies to --fill mean");
    mean_color = parse_mean(mean_s);
  }
  config.fill = parse_fill(fill_s, mean_color);

  std::string scheme_s = "ire";
  merge(scheme_s, o_scheme, scheme, file, "scheme");
  try {
    config.scheme = detection::parse_scheme(scheme_s);
  } catch (const ParamError& e) {
    throw UsageError(e.what());
  }

  if (o_level->count() > 0) {
    config.levels = parse_levels(level);
  } else if (file.contains("level")) {
    config.levels = parse_levels(file_string_or_list(file, "level"));
  }

  merge(config.flip, o_flip, flip, file, "flip");
  merge(config.crop, o_crop, crop, file, "crop");
  merge(config.pad, o_pad, pad, file, "pad");
  merge(config.seed, o_seed, seed, file, "seed");
  merge(config.jobs, o_jobs, jobs, file, "jobs");
  merge(config.quick, o_quick, quick, file, "quick");
  double tol = 0.0;
  bool tol_set = file.contains("oracle-tolerance");
  if (tol_set) tol = file_value<double>(file, "oracle-tolerance");
  if (o_oracle_tol->count() > 0) {
    tol = oracle_tolerance;
    tol_set = true;
  }
  if (tol_set) config.oracle_tolerance = tol;

  config.validate();
  return config;
}

int run_cli(const std::vector<std::string>& args) {
  JobConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "erasekit: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    switch (config.command) {
      case Command::kAugment: {
        const RunManifest m = run_augment(config);
        print_manifest_summary(m, std::cout);
        return m.counters.errors > 0 ? kExitIo : kExitOk;
      }
      case Command::kAugmentDet: {
        const RunManifest m = run_augment_det(config);
        print_manifest_summary(m, std::cout);
        return m.counters.errors > 0 ? kExitIo : kExitOk;
      }
      case Command::kOcclude: {
        bool errors = false;
        const auto manifests = run_occlude(config);
        for (std::size_t i = 0; i < manifests.size(); ++i) {
          std::cout << "level " << config.levels[i] << ": ";
          print_manifest_summary(manifests[i], std::cout);
          errors = errors || manifests[i].counters.errors > 0;
        }
        return errors ? kExitIo : kExitOk;
      }
      case Command::kStats: {
        const stats::ValidationReport report = run_stats(config);
        for (const auto& c : report.checks) {
          std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " empirical=" << c.empirical
                    << " oracle=" << c.oracle << " tolerance=" << c.tolerance << "\n";
        }
        return report.passed() ? kExitOk : kExitCheckFailed;
      }
      case Command::kVerifyOre: {
        const VerifyResult r = verify_ore(config);
        for (const auto& msg : r.messages) std::cout << msg << "\n";
        std::cout << (r.ok() ? "OK" : "FAILED") << ": " << r.images << " images checked, "
                  << r.violations << " violations\n";
        return r.ok() ? kExitOk : kExitCheckFailed;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "erasekit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "erasekit: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace erasekit::pipeline
