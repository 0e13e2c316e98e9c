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

// AVX2 variants. This TU is compiled with -mavx2 and must only be entered
// after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <array>

#include "kernels_internal.hpp"

namespace erasekit::kernels {
namespace {

void fill_pixels(std::span<std::uint8_t> dst, std::span<const std::uint8_t> color) {
  std::uint8_t* out = dst.data();
  const std::size_t n = dst.size();
  std::size_t i = 0;
  if (color.size() == 1) {
    const __m256i v = _mm256_set1_epi8(static_cast<char>(color[0]));
    for (; i + 32 <= n; i += 32) {
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
    }
    for (; i < n; ++i) out[i] = color[0];
    return;
  }
  // 96 bytes = 32 RGB pixels; the span starts on a pixel boundary so the
  // pattern phase stays aligned.
  alignas(32) std::array<std::uint8_t, 96> pattern{};
  for (std::size_t k = 0; k < pattern.size(); ++k) pattern[k] = color[k % 3];
  const __m256i p0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern.data()));
  const __m256i p1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern.data() + 32));
  const __m256i p2 = _mm256_load_si256(reinterpret_cast<const __m256i*>(pattern.data() + 64));
  for (; i + 96 <= n; i += 96) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), p0);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i + 32), p1);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i + 64), p2);
  }
  for (; i < n; ++i) out[i] = color[i % 3];
}

void reverse_gray(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  const __m256i rev = _mm256_setr_epi8(15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0,
                                       15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + n - i - 32));
    v = _mm256_shuffle_epi8(v, rev);
    v = _mm256_permute2x128_si256(v, v, 0x01);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), v);
  }
  for (; i < n; ++i) dst[i] = src[n - 1 - i];
}

// Five RGB pixels per 16-byte shuffle. Each load reads one byte past the
// five source pixels and each store writes one byte past the five
// destination pixels, so the first pixel and the last few are done scalar to
// keep both inside the buffers.
void reverse_rgb(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  const __m128i rev5 = _mm_setr_epi8(12, 13, 14, 9, 10, 11, 6, 7, 8, 3, 4, 5, 0, 1, 2,
                                     static_cast<char>(0x80));
  auto copy_one = [&](std::size_t i) {
    const std::size_t from = (n - 1 - i) * 3;
    dst[i * 3] = src[from];
    dst[i * 3 + 1] = src[from + 1];
    dst[i * 3 + 2] = src[from + 2];
  };
  if (n == 0) return;
  copy_one(0);
  std::size_t i = 1;
  for (; i + 6 <= n; i += 5) {
    const __m128i v =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(src + (n - 5 - i) * 3));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + i * 3), _mm_shuffle_epi8(v, rev5));
  }
  for (; i < n; ++i) copy_one(i);
}

void reverse_pixels(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src,
                    int channels) {
  if (channels == 1) {
    reverse_gray(dst.data(), src.data(), src.size());
  } else if (channels == 3) {
    reverse_rgb(dst.data(), src.data(), src.size() / 3);
  } else {
    scalar_impl::reverse_pixels(dst, src, channels);
  }
}

void mark_diff(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
               std::span<std::uint8_t> mask) {
  const std::size_t n = a.size();
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    const __m256i eq = _mm256_cmpeq_epi8(va, vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask.data() + i),
                        _mm256_andnot_si256(eq, one));
  }
  for (; i < n; ++i) mask[i] = a[i] != b[i] ? 1 : 0;
}

void increment(std::span<std::uint32_t> counts) {
  const std::size_t n = counts.size();
  std::uint32_t* p = counts.data();
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i* q = reinterpret_cast<__m256i*>(p + i);
    _mm256_storeu_si256(q, _mm256_add_epi32(_mm256_loadu_si256(q), one));
  }
  for (; i < n; ++i) ++p[i];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2", &fill_pixels, &reverse_pixels, &mark_diff, &increment,
  };
  return table;
}

}  // namespace erasekit::kernels
