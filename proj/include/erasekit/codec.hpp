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

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "erasekit/image.hpp"

namespace erasekit::codec {

enum class ErrorCode {
  kMalformedHeader,
  kTruncated,
  kUnsupportedDepth,
  kUnsupportedFormat,
  kIo,
};

const char* to_string(ErrorCode code);

class CodecError : public std::runtime_error {
 public:
  CodecError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

using Bytes = std::vector<std::uint8_t>;

enum class Format { kPng, kPnm, kIdx };

// Sniffs the leading magic bytes. Throws CodecError(kUnsupportedFormat).
Format detect_format(std::span<const std::uint8_t> bytes);

// Binary PGM (P5) for 1-channel images, PPM (P6) for 3-channel. maxval must
// be 255. Header tokens may be separated by any whitespace and '#' comments;
// exactly one whitespace byte separates maxval from the raster.
Image decode_pnm(std::span<const std::uint8_t> bytes);
Bytes encode_pnm(const Image& img);

// 8-bit gray or RGB. Palette and sub-byte gray inputs are expanded; alpha
// and 16-bit inputs are rejected.
Image decode_png(std::span<const std::uint8_t> bytes);
Bytes encode_png(const Image& img);

// IDX image tensor: magic 0x00000803, big-endian count/rows/cols, u8 data.
std::vector<Image> decode_idx_images(std::span<const std::uint8_t> bytes);
// All images must be 1-channel and share one size. Throws ImageError
// otherwise (and for an empty list).
Bytes encode_idx_images(std::span<const Image> images);

// IDX label vector: magic 0x00000801, big-endian count, u8 labels.
std::vector<std::uint8_t> decode_idx_labels(std::span<const std::uint8_t> bytes);
Bytes encode_idx_labels(std::span<const std::uint8_t> labels);

// Single-image helpers keyed on the detected format.
Image decode_image(std::span<const std::uint8_t> bytes);
Bytes encode_image(const Image& img, Format format);

Bytes read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

std::vector<Image> load_idx_images(const std::filesystem::path& path);
void save_idx_images(const std::filesystem::path& path, std::span<const Image> images);

}  // namespace erasekit::codec
