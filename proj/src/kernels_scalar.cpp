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

#include "kernels_internal.hpp"

#include <algorithm>

namespace erasekit::kernels {
namespace scalar_impl {

void fill_pixels(std::span<std::uint8_t> dst, std::span<const std::uint8_t> color) {
  const std::size_t ch = color.size();
  if (ch == 1) {
    std::fill(dst.begin(), dst.end(), color[0]);
    return;
  }
  for (std::size_t i = 0; i + ch <= dst.size(); i += ch) {
    for (std::size_t c = 0; c < ch; ++c) dst[i + c] = color[c];
  }
}

void reverse_pixels(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                    int channels) {
  const std::size_t ch = static_cast<std::size_t>(channels);
  const std::size_t n = src.size() / ch;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t from = (n - 1 - i) * ch;
    for (std::size_t c = 0; c < ch; ++c) dst[i * ch + c] = src[from + c];
  }
}

void mark_diff(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
               std::span<std::uint8_t> mask) {
  for (std::size_t i = 0; i < a.size(); ++i) mask[i] = a[i] != b[i] ? 1 : 0;
}

void increment(std::span<std::uint32_t> counts) {
  for (auto& c : counts) ++c;
}

}  // namespace scalar_impl

const KernelTable& scalar() {
  static const KernelTable table{
      "scalar",
      &scalar_impl::fill_pixels,
      &scalar_impl::reverse_pixels,
      &scalar_impl::mark_diff,
      &scalar_impl::increment,
  };
  return table;
}

}  // namespace erasekit::kernels
