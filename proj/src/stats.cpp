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

#include "erasekit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "erasekit/kernels.hpp"
#include "erasekit/parallel.hpp"
#include "erasekit/transforms.hpp"
#include "json.hpp"

namespace erasekit::stats {
namespace {

constexpr std::uint64_t kChunk = 1 << 14;

std::size_t chunk_count(std::uint64_t trials) {
  return static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
}

std::uint64_t chunk_size(std::size_t chunk, std::uint64_t trials) {
  return std::min<std::uint64_t>(kChunk, trials - static_cast<std::uint64_t>(chunk) * kChunk);
}

// Rounding rule of the sampler, written out again so the oracle does not
// call into the code it checks.
long long oracle_side(double length) {
  const double r = std::floor(length + 0.5);
  return r < 1.0 ? 1 : static_cast<long long>(std::min(r, 1e12));
}

// Sub-seeds for the checks of one validation run.
enum SeedSlot : std::uint64_t {
  kGateSeed = 1,
  kEraseFractionSeed,
  kOracleMcSeed,
  kPinSeed,
  kConditionalSeed,
  kHeatmapSeed,
  kFillSeed,
  kSelfTestSeed,
};

}  // namespace

int bin_index(double v, double lo, double hi, int bins) {
  if (!(hi > lo)) return 0;
  const int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
  return std::clamp(b, 0, bins - 1);
}

OracleSummary oracle_summary(int width, int height, const EraseParams& params, int grid,
                             int area_bins, int aspect_bins, int hist_bins) {
  params.validate();
  if (grid < 1 || area_bins < 1 || aspect_bins < 1 || hist_bins < 1 || grid % area_bins != 0 ||
      grid % aspect_bins != 0 || grid % hist_bins != 0) {
    throw std::invalid_argument("oracle grid must be a positive multiple of every bin count");
  }
  OracleSummary out;
  out.area_bins = area_bins;
  out.aspect_bins = aspect_bins;
  const double frame = static_cast<double>(width) * height;
  const double ds = (params.area_max - params.area_min) / grid;
  const double dr = (params.aspect_max - params.aspect_min) / grid;

  std::vector<std::uint64_t> joint(static_cast<std::size_t>(area_bins) * aspect_bins, 0);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(hist_bins), 0);
  std::uint64_t placements_total = 0;
  long double area_weighted = 0.0L;

  for (int i = 0; i < grid; ++i) {
    const double s = params.area_min + (i + 0.5) * ds;
    const double target = s * frame;
    const int sb = bin_index(s, params.area_min, params.area_max, area_bins);
    const int hb = bin_index(s, params.area_min, params.area_max, hist_bins);
    for (int j = 0; j < grid; ++j) {
      const double r = params.aspect_min + (j + 0.5) * dr;
      const long long h = oracle_side(std::sqrt(target * r));
      const long long w = oracle_side(std::sqrt(target / r));
      const long long fx = std::max(0LL, width - w + 1);
      const long long fy = std::max(0LL, height - h + 1);
      const std::uint64_t placements = static_cast<std::uint64_t>(fx * fy);
      if (placements == 0) continue;
      placements_total += placements;
      area_weighted += static_cast<long double>(placements) * static_cast<long double>(w * h);
      const int rb = bin_index(r, params.aspect_min, params.aspect_max, aspect_bins);
      joint[static_cast<std::size_t>(sb) * aspect_bins + rb] += placements;
      hist[static_cast<std::size_t>(hb)] += placements;
    }
  }

  const double cells = static_cast<double>(grid) * grid;
  out.acceptance = static_cast<double>(placements_total) / (cells * frame);
  out.joint.assign(joint.size(), 0.0);
  out.area_histogram.assign(hist.size(), 0.0);
  if (placements_total > 0) {
    const double total = static_cast<double>(placements_total);
    out.conditional_area_mean = static_cast<double>(area_weighted / placements_total) / frame;
    for (std::size_t k = 0; k < joint.size(); ++k) out.joint[k] = joint[k] / total;
    for (std::size_t k = 0; k < hist.size(); ++k) out.area_histogram[k] = hist[k] / total;
  }
  return out;
}

double acceptance_probability_oracle(int width, int height, const EraseParams& params, int grid) {
  return oracle_summary(width, height, params, grid, 1, 1, 1).acceptance;
}

double estimate_gate_rate(double p, std::uint64_t trials, std::uint64_t seed, int jobs) {
  const std::size_t chunks = chunk_count(trials);
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = begin + chunk_size(c, trials);
    for (std::uint64_t i = begin; i < end; ++i) {
      RngStream rng(derive_seed(seed, i));
      if (gate(rng, p)) ++hits[c];
    }
  });
  const std::uint64_t total = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  return static_cast<double>(total) / static_cast<double>(trials);
}

double estimate_acceptance_rate(int width, int height, const EraseParams& params,
                                std::uint64_t attempts, std::uint64_t seed, int jobs) {
  params.validate();
  const std::size_t chunks = chunk_count(attempts);
  std::vector<std::uint64_t> fits(chunks, 0);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    RngStream rng(derive_seed(seed, c));
    const std::uint64_t n = chunk_size(c, attempts);
    std::uint64_t local = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const Attempt a = draw_attempt(rng, width, height, params.area_min, params.area_max,
                                     params.aspect_min, params.aspect_max);
      local += a.fits ? 1 : 0;
    }
    fits[c] = local;
  });
  const std::uint64_t total = std::accumulate(fits.begin(), fits.end(), std::uint64_t{0});
  return static_cast<double>(total) / static_cast<double>(attempts);
}

AreaRatioMoments area_ratio_moments(int width, int height, const EraseParams& params,
                                    std::uint64_t trials, std::uint64_t seed, int jobs,
                                    int hist_bins, int area_bins, int aspect_bins) {
  params.validate();
  struct Partial {
    std::uint64_t accepted = 0;
    std::uint64_t area_sum = 0;
    std::uint64_t area_sq_sum = 0;
    std::vector<std::uint64_t> hist;
    std::vector<std::uint64_t> joint;
  };
  const std::size_t chunks = chunk_count(trials);
  std::vector<Partial> partials(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    Partial& part = partials[c];
    part.hist.assign(static_cast<std::size_t>(hist_bins), 0);
    part.joint.assign(static_cast<std::size_t>(area_bins) * aspect_bins, 0);
    RngStream rng(derive_seed(seed, c));
    const std::uint64_t n = chunk_size(c, trials);
    for (std::uint64_t i = 0; i < n; ++i) {
      const SampleOutcome outcome = sample_region(rng, width, height, params);
      const auto* acc = std::get_if<Accepted>(&outcome);
      if (acc == nullptr) continue;
      ++part.accepted;
      const auto area = static_cast<std::uint64_t>(acc->region.area());
      part.area_sum += area;
      part.area_sq_sum += area * area;
      ++part.hist[static_cast<std::size_t>(
          bin_index(acc->area_ratio, params.area_min, params.area_max, hist_bins))];
      const int sb = bin_index(acc->area_ratio, params.area_min, params.area_max, area_bins);
      const int rb = bin_index(acc->aspect, params.aspect_min, params.aspect_max, aspect_bins);
      ++part.joint[static_cast<std::size_t>(sb) * aspect_bins + rb];
    }
  });

  AreaRatioMoments out;
  out.trials = trials;
  out.area_bins = area_bins;
  out.aspect_bins = aspect_bins;
  out.area_histogram.assign(static_cast<std::size_t>(hist_bins), 0);
  out.joint_histogram.assign(static_cast<std::size_t>(area_bins) * aspect_bins, 0);
  std::uint64_t area_sum = 0;
  std::uint64_t area_sq_sum = 0;
  for (const Partial& part : partials) {
    out.accepted += part.accepted;
    area_sum += part.area_sum;
    area_sq_sum += part.area_sq_sum;
    for (std::size_t k = 0; k < part.hist.size(); ++k) out.area_histogram[k] += part.hist[k];
    for (std::size_t k = 0; k < part.joint.size(); ++k) out.joint_histogram[k] += part.joint[k];
  }
  out.nofit = trials - out.accepted;
  if (out.accepted > 0) {
    const double frame = static_cast<double>(width) * height;
    const double n = static_cast<double>(out.accepted);
    out.mean = static_cast<double>(area_sum) / n / frame;
    const double second = static_cast<double>(area_sq_sum) / n / (frame * frame);
    out.variance = std::max(0.0, second - out.mean * out.mean);
  }
  return out;
}

OcclusionMap pixel_occlusion_map(int width, int height, const EraseParams& params,
                                 std::uint64_t trials, std::uint64_t seed, int jobs) {
  params.validate();
  struct Partial {
    std::vector<std::uint32_t> counts;
    std::uint64_t accepted = 0;
    std::uint64_t covered = 0;
  };
  const std::size_t chunks = chunk_count(trials);
  std::vector<Partial> partials(chunks);
  const auto& k = kernels::active();
  parallel_for(chunks, jobs, [&](std::size_t c) {
    Partial& part = partials[c];
    part.counts.assign(static_cast<std::size_t>(width) * height, 0);
    RngStream rng(derive_seed(seed, c));
    const std::uint64_t n = chunk_size(c, trials);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!gate(rng, params.p)) continue;
      const SampleOutcome outcome = sample_region(rng, width, height, params);
      const auto* acc = std::get_if<Accepted>(&outcome);
      if (acc == nullptr) continue;
      ++part.accepted;
      part.covered += static_cast<std::uint64_t>(acc->region.area());
      const Region& r = acc->region;
      for (int y = r.y; y < r.bottom(); ++y) {
        k.increment(std::span<std::uint32_t>(part.counts).subspan(
            static_cast<std::size_t>(y) * width + r.x, static_cast<std::size_t>(r.w)));
      }
    }
  });

  OcclusionMap map;
  map.width = width;
  map.height = height;
  map.trials = trials;
  map.counts.assign(static_cast<std::size_t>(width) * height, 0);
  for (const Partial& part : partials) {
    map.accepted += part.accepted;
    map.covered_area += part.covered;
    for (std::size_t i = 0; i < map.counts.size(); ++i) map.counts[i] += part.counts[i];
  }
  return map;
}

double mirror_max_z(const OcclusionMap& map, MirrorAxis axis) {
  const double n = static_cast<double>(map.trials);
  double worst = 0.0;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const int mx = axis == MirrorAxis::kHorizontal ? map.width - 1 - x : x;
      const int my = axis == MirrorAxis::kVertical ? map.height - 1 - y : y;
      const double a = map.at(x, y);
      const double b = map.at(mx, my);
      const double pooled = (a + b) / (2.0 * n);
      const double sigma = std::sqrt(2.0 * n * pooled * (1.0 - pooled));
      const double diff = std::abs(a - b);
      if (sigma > 0.0) {
        worst = std::max(worst, diff / sigma);
      } else if (diff > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
    }
  }
  return worst;
}

Check make_check(std::string name, double empirical, double oracle, double tolerance,
                 std::uint64_t trials) {
  Check c{std::move(name), empirical, oracle, tolerance, false, trials};
  c.pass = std::abs(empirical - oracle) <= tolerance;
  return c;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string to_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["seed"] = report.seed;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : report.checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["empirical"] = c.empirical;
    j["oracle"] = c.oracle;
    j["tolerance"] = c.tolerance;
    j["pass"] = c.pass;
    j["trials"] = c.trials;
    doc["checks"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

SuiteConfig SuiteConfig::quick() {
  SuiteConfig c;
  c.oracle_mc_attempts = 1'000'000;
  c.conditional_trials = 200'000;
  c.heatmap_trials = 20'000;
  c.chi_square_meta_trials = 200;
  return c;
}

ValidationReport run_validation(const SuiteConfig& config) {
  ValidationReport report;
  report.seed = config.seed;
  auto& checks = report.checks;
  auto sub_seed = [&](SeedSlot slot) { return derive_seed(config.seed, slot); };
  const EraseParams classification = EraseParams::classification();
  const EraseParams detection = EraseParams::detection();

  // Gate.
  for (const double p : {0.0, 0.5, 1.0}) {
    const double rate = estimate_gate_rate(p, config.gate_trials, sub_seed(kGateSeed), config.jobs);
    char name[32];
    std::snprintf(name, sizeof(name), "gate_rate/p=%g", p);
    checks.push_back(make_check(name, rate, p, p == 0.5 ? 0.005 : 0.0, config.gate_trials));
  }

  // Whole-transform erase fraction over per-item streams.
  {
    const Image base = new_image(32, 32, 1, Color::gray(200));
    std::vector<std::uint64_t> erased(chunk_count(config.gate_trials), 0);
    const std::uint64_t seed = sub_seed(kEraseFractionSeed);
    parallel_for(erased.size(), config.jobs, [&](std::size_t c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = begin + chunk_size(c, config.gate_trials);
      for (std::uint64_t i = begin; i < end; ++i) {
        RngStream rng(derive_seed(seed, i));
        const EraseResult r = random_erase_traced(base, classification, FillMode::zero(), rng);
        if (r.image != base) ++erased[c];
      }
    });
    const double q = acceptance_probability_oracle(32, 32, classification, config.oracle_grid);
    const double expected =
        classification.p * (1.0 - std::pow(1.0 - q, classification.max_attempts));
    const double frac = static_cast<double>(std::accumulate(erased.begin(), erased.end(),
                                                            std::uint64_t{0})) /
                        static_cast<double>(config.gate_trials);
    checks.push_back(make_check("erase_fraction/classification/32x32", frac, expected, 0.005,
                                config.gate_trials));
  }

  // Oracle against Monte Carlo.
  const double oracle_tol = config.oracle_tolerance.value_or(0.005);
  for (const auto& [preset_name, params] :
       {std::pair{"classification", classification}, std::pair{"detection", detection}}) {
    for (const auto& [w, h] : config.sizes) {
      const double q = acceptance_probability_oracle(w, h, params, config.oracle_grid);
      const double mc = estimate_acceptance_rate(w, h, params, config.oracle_mc_attempts,
                                                 sub_seed(kOracleMcSeed), config.jobs);
      checks.push_back(make_check("oracle_vs_mc/" + std::string(preset_name) + "/" +
                                      std::to_string(w) + "x" + std::to_string(h),
                                  mc, q, oracle_tol, config.oracle_mc_attempts));
    }
  }

  // Analytic pin: a 16x16 square in a 32x32 frame has 17 * 17 placements.
  {
    EraseParams pin;
    pin.area_min = pin.area_max = 0.25;
    pin.aspect_min = pin.aspect_max = 1.0;
    const double q = acceptance_probability_oracle(32, 32, pin, config.oracle_grid);
    checks.push_back(make_check("analytic_pin/oracle", q, 289.0 / 1024.0, 0.0, 0));
    const double mc =
        estimate_acceptance_rate(32, 32, pin, config.pin_attempts, sub_seed(kPinSeed), config.jobs);
    checks.push_back(make_check("analytic_pin/mc", mc, 289.0 / 1024.0, oracle_tol,
                                config.pin_attempts));
  }

  // Conditional law of accepted draws.
  {
    const OracleSummary oracle = oracle_summary(32, 32, classification, config.oracle_grid);
    const AreaRatioMoments m = area_ratio_moments(32, 32, classification, config.conditional_trials,
                                                  sub_seed(kConditionalSeed), config.jobs);
    checks.push_back(make_check("area_mean/classification/32x32", m.mean,
                                oracle.conditional_area_mean, 0.01, m.accepted));
    checks.push_back(make_check("area_histogram_max_z/classification/32x32",
                                max_binomial_z(m.area_histogram, oracle.area_histogram), 0.0, 5.0,
                                m.accepted));
    checks.push_back(make_check("joint_sr_max_z/classification/32x32",
                                max_binomial_z(m.joint_histogram, oracle.joint), 0.0, 5.0,
                                m.accepted));
    const double nofit_rate = static_cast<double>(m.nofit) / static_cast<double>(m.trials);
    checks.push_back(make_check("nofit_rate/classification/32x32", nofit_rate, 0.0, 1e-6, m.trials));
  }

  // Spatial symmetry of the erase heatmap on an odd-sided frame.
  {
    const OcclusionMap map = pixel_occlusion_map(33, 33, classification, config.heatmap_trials,
                                                 sub_seed(kHeatmapSeed), config.jobs);
    checks.push_back(make_check("heatmap_mirror_max_z/horizontal",
                                mirror_max_z(map, MirrorAxis::kHorizontal), 0.0, 5.0, map.trials));
    checks.push_back(make_check("heatmap_mirror_max_z/vertical",
                                mirror_max_z(map, MirrorAxis::kVertical), 0.0, 5.0, map.trials));
    const std::uint64_t total =
        std::accumulate(map.counts.begin(), map.counts.end(), std::uint64_t{0});
    checks.push_back(make_check("heatmap_conservation", static_cast<double>(total),
                                static_cast<double>(map.covered_area), 0.0, map.trials));
  }

  // Per-pixel random fill, sampled through the real erase path.
  {
    std::vector<std::uint64_t> bins(256, 0);
    std::uint64_t samples = 0;
    long double sum = 0.0L;
    const Image base = new_image(32, 32, 3, Color::rgb(0, 0, 0));
    EraseParams always = classification;
    always.p = 1.0;
    const std::uint64_t seed = sub_seed(kFillSeed);
    for (std::uint64_t i = 0; samples < config.fill_samples; ++i) {
      RngStream rng(derive_seed(seed, i));
      const EraseResult r = random_erase_traced(base, always, FillMode::random_per_pixel(), rng);
      if (!r.record.region) continue;
      const Region& reg = *r.record.region;
      for (int y = reg.y; y < reg.bottom(); ++y) {
        for (int x = reg.x; x < reg.right(); ++x) {
          for (int c = 0; c < 3; ++c) {
            const std::uint8_t v = r.image.at(x, y, c);
            ++bins[v];
            sum += v;
            ++samples;
          }
        }
      }
    }
    const ChiSquareResult chi = chi_square_uniform(bins, 0.001);
    checks.push_back(make_check("fill_uniformity/chi_square", chi.statistic, 0.0, chi.critical, samples));
    checks.push_back(make_check("fill_uniformity/mean", static_cast<double>(sum / samples), 127.5,
                                0.5, samples));
  }

  // The chi-square machinery itself, on uniform synthetic data.
  {
    const int meta = config.chi_square_meta_trials;
    std::vector<std::uint8_t> passed(static_cast<std::size_t>(meta), 0);
    const std::uint64_t seed = sub_seed(kSelfTestSeed);
    const double critical = chi_square_critical(255, 0.001);
    parallel_for(passed.size(), config.jobs, [&](std::size_t t) {
      RngStream rng(derive_seed(seed, t));
      std::vector<std::uint64_t> bins(256, 0);
      for (int i = 0; i < 256 * 100; ++i) ++bins[rng.next_below(256)];
      passed[t] = chi_square_uniform(bins, 0.001).statistic <= critical ? 1 : 0;
    });
    const double frac =
        static_cast<double>(std::accumulate(passed.begin(), passed.end(), 0)) / meta;
    checks.push_back(make_check("chi_square_self_test/pass_fraction", frac, 1.0, 0.01,
                                static_cast<std::uint64_t>(meta)));
  }

  return report;
}

}  // namespace erasekit::stats
