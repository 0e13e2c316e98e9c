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

#include "erasekit/kernels.hpp"

namespace erasekit::kernels {

namespace scalar_impl {
void fill_pixels(std::span<std::uint8_t> dst, std::span<const std::uint8_t> color);
void reverse_pixels(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                    int channels);
void mark_diff(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
               std::span<std::uint8_t> mask);
void increment(std::span<std::uint32_t> counts);
}  // namespace scalar_impl

#if defined(ERASEKIT_HAVE_AVX2)
// Defined in kernels_avx2.cpp, which is the only TU built with -mavx2.
const KernelTable& avx2_table();
#endif

}  // namespace erasekit::kernels
