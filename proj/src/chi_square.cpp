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

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "erasekit/stats.hpp"

namespace erasekit::stats {

double chi_square_critical(int dof, double alpha) {
  const boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts, double alpha) {
  ChiSquareResult r;
  r.dof = static_cast<int>(counts.size()) - 1;
  if (r.dof < 1) return r;
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total <= 0.0) return r;
  const double expected = total / static_cast<double>(counts.size());
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    r.statistic += d * d / expected;
  }
  r.critical = chi_square_critical(r.dof, alpha);
  r.pass = r.statistic <= r.critical;
  return r;
}

double max_binomial_z(std::span<const std::uint64_t> observed, std::span<const double> probabilities) {
  const double n =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  double worst = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double pi = probabilities[i];
    const double expected = n * pi;
    const double diff = std::abs(static_cast<double>(observed[i]) - expected);
    const double sigma = std::sqrt(n * pi * (1.0 - pi));
    if (sigma > 0.0) {
      worst = std::max(worst, diff / sigma);
    } else if (diff > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

}  // namespace erasekit::stats
