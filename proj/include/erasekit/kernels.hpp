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

// Pixel inner loops. Every kernel has a scalar reference implementation; SIMD
// variants must produce byte-identical results and are picked once at
// startup based on CPU support. Set ERASEKIT_SIMD=scalar in the environment
// to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>

namespace erasekit::kernels {

struct KernelTable {
  const char* name;

  // Writes `color` (1 or 3 bytes) to every pixel of `dst`. dst.size() must be
  // a multiple of `channels`.
  void (*fill_pixels)(std::span<std::uint8_t> dst, std::span<const std::uint8_t> color);

  // dst pixel i = src pixel (n - 1 - i), where n = src.size() / channels.
  // dst and src must not overlap and must have equal size.
  void (*reverse_pixels)(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                         int channels);

  // mask[i] = (a[i] != b[i]) ? 1 : 0. All three spans have equal size.
  void (*mark_diff)(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                    std::span<std::uint8_t> mask);

  // counts[i] += 1 for every i.
  void (*increment)(std::span<std::uint32_t> counts);
};

const KernelTable& scalar();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2();

// The table used by the library.
const KernelTable& active();

}  // namespace erasekit::kernels
