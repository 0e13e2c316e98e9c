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

// Distributional checks for the erase sampler.
//
// Oracle: a dense midpoint grid over (area ratio, aspect). Each cell's
// rectangle is rounded like the sampler's and contributes the exact discrete
// placement probability
//
//   max(0, W - w + 1) * max(0, H - h + 1) / (W * H)
//
// No random numbers are drawn on this path.
//
// Monte Carlo: the real sampler, run in fixed chunks with one derive_seed
// stream per chunk and integer reductions. Results depend on (seed, trials)
// only, never on `jobs`.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erasekit/sampler.hpp"

namespace erasekit::stats {

inline constexpr int kDefaultOracleGrid = 2000;

// Oracle integrals over the (area ratio, aspect) rectangle.
struct OracleSummary {
  double acceptance = 0.0;               // per-attempt acceptance probability q
  double conditional_area_mean = 0.0;    // E[w*h / (W*H) | accepted]
  std::vector<double> joint;             // P(cell | accepted), area-major
  std::vector<double> area_histogram;    // P(area-ratio bin | accepted)
  int area_bins = 0;
  int aspect_bins = 0;
};

// grid must be a positive multiple of area_bins, aspect_bins and hist_bins.
OracleSummary oracle_summary(int width, int height, const EraseParams& params,
                             int grid = kDefaultOracleGrid, int area_bins = 10,
                             int aspect_bins = 10, int hist_bins = 20);

double acceptance_probability_oracle(int width, int height, const EraseParams& params,
                                     int grid = kDefaultOracleGrid);

// Bin of v in [lo, hi] split into `bins` equal parts; degenerate ranges map
// to bin 0.
int bin_index(double v, double lo, double hi, int bins);

double estimate_gate_rate(double p, std::uint64_t trials, std::uint64_t seed, int jobs = 1);

// Fraction of single proposals (draw_attempt) that fit.
double estimate_acceptance_rate(int width, int height, const EraseParams& params,
                                std::uint64_t attempts, std::uint64_t seed, int jobs = 1);

struct AreaRatioMoments {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t nofit = 0;
  double mean = 0.0;       // of realized w*h / (W*H) over accepted outcomes
  double variance = 0.0;
  std::vector<std::uint64_t> area_histogram;   // drawn area ratio
  std::vector<std::uint64_t> joint_histogram;  // drawn (area ratio, aspect)
  int area_bins = 0;
  int aspect_bins = 0;
};

AreaRatioMoments area_ratio_moments(int width, int height, const EraseParams& params,
                                    std::uint64_t trials, std::uint64_t seed, int jobs = 1,
                                    int hist_bins = 20, int area_bins = 10, int aspect_bins = 10);

struct OcclusionMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> counts;
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t covered_area = 0;  // sum of accepted region areas

  std::uint32_t at(int x, int y) const {
    return counts[static_cast<std::size_t>(y) * width + x];
  }
};

// Gate plus sampler per trial; counts how often each pixel was covered.
OcclusionMap pixel_occlusion_map(int width, int height, const EraseParams& params,
                                 std::uint64_t trials, std::uint64_t seed, int jobs = 1);

enum class MirrorAxis { kHorizontal, kVertical };

// Largest |c(p) - c(mirror p)| over all pixels, in units of the binomial
// standard deviation of the difference (variances summed, pooled rate).
double mirror_max_z(const OcclusionMap& map, MirrorAxis axis);

// Largest |observed - expected| / sqrt(n * pi * (1 - pi)) over cells, where
// pi are the oracle probabilities and n the observed total.
double max_binomial_z(std::span<const std::uint64_t> observed, std::span<const double> probabilities);

struct ChiSquareResult {
  double statistic = 0.0;
  double critical = 0.0;
  int dof = 0;
  bool pass = false;
};

// Pearson test of `counts` against the uniform law at significance alpha.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts, double alpha);

// Upper-tail critical value of the chi-square law.
double chi_square_critical(int dof, double alpha);

struct Check {
  std::string name;
  double empirical = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t trials = 0;
};

Check make_check(std::string name, double empirical, double oracle, double tolerance,
                 std::uint64_t trials);

struct ValidationReport {
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool passed() const;
  const Check* find(const std::string& name) const;
};

// JSON: {"seed": u64, "checks": [{"name", "empirical", "oracle",
// "tolerance", "pass", "trials"}]}.
std::string to_json(const ValidationReport& report);

struct SuiteConfig {
  std::uint64_t seed = 0x5EED;
  int jobs = 1;
  int oracle_grid = kDefaultOracleGrid;
  std::uint64_t gate_trials = 200'000;
  std::uint64_t oracle_mc_attempts = 10'000'000;
  std::uint64_t pin_attempts = 1'000'000;
  std::uint64_t conditional_trials = 1'000'000;
  std::uint64_t heatmap_trials = 100'000;
  std::uint64_t fill_samples = 1'000'000;
  int chi_square_meta_trials = 1000;
  std::vector<std::pair<int, int>> sizes = {{32, 32}, {28, 28}, {256, 128}, {600, 400}};
  // Replaces the tolerance of every oracle-vs-Monte-Carlo check.
  std::optional<double> oracle_tolerance;

  // Reduced trial counts for smoke runs.
  static SuiteConfig quick();
};

// Runs every check. Failures are recorded in the report, never thrown.
ValidationReport run_validation(const SuiteConfig& config);

}  // namespace erasekit::stats
