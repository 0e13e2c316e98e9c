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

#include "erasekit/codec.hpp"

#include <png.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

namespace erasekit::codec {
namespace {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;
constexpr std::uint8_t kIdxTypeUnsignedByte = 0x08;
constexpr std::int64_t kMaxSide = std::int64_t{1} << 24;

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) |
         (std::uint32_t{b[at + 2]} << 8) | std::uint32_t{b[at + 3]};
}

void append_be32(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

bool is_pnm_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Cursor over a PNM header.
class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::int64_t next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw CodecError(ErrorCode::kTruncated, "PNM header ends early");
    if (!std::isdigit(bytes_[pos_])) {
      throw CodecError(ErrorCode::kMalformedHeader, "expected an integer in PNM header");
    }
    std::int64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > kMaxSide) throw CodecError(ErrorCode::kMalformedHeader, "PNM header value too large");
    }
    return v;
  }

  // Consumes the single whitespace byte that ends the header.
  void end_header() {
    if (pos_ >= bytes_.size()) throw CodecError(ErrorCode::kTruncated, "PNM header ends early");
    if (!is_pnm_space(bytes_[pos_])) {
      throw CodecError(ErrorCode::kMalformedHeader, "missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_pnm_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kTruncated: return "truncated payload";
    case ErrorCode::kUnsupportedDepth: return "unsupported bit depth";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown";
}

Format detect_format(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return Format::kPng;
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return Format::kPnm;
  }
  if (bytes.size() >= 4 && bytes[0] == 0 && bytes[1] == 0) {
    return Format::kIdx;
  }
  throw CodecError(ErrorCode::kUnsupportedFormat, "unrecognized image signature");
}

// ---------------------------------------------------------------------------
// PNM

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw CodecError(ErrorCode::kTruncated, "PNM shorter than its magic");
  if (bytes[0] != 'P') throw CodecError(ErrorCode::kMalformedHeader, "not a PNM file");
  int channels = 0;
  switch (bytes[1]) {
    case '5': channels = 1; break;
    case '6': channels = 3; break;
    case '1': case '2': case '3': case '4': case '7':
      throw CodecError(ErrorCode::kUnsupportedFormat, "only binary P5/P6 are supported");
    default:
      throw CodecError(ErrorCode::kMalformedHeader, "bad PNM magic");
  }
  PnmHeaderReader reader(bytes);
  reader.advance(2);
  const std::int64_t width = reader.next_int();
  const std::int64_t height = reader.next_int();
  const std::int64_t maxval = reader.next_int();
  if (width < 1 || height < 1) throw CodecError(ErrorCode::kMalformedHeader, "zero PNM dimension");
  if (maxval < 1 || maxval > 65535) throw CodecError(ErrorCode::kMalformedHeader, "bad PNM maxval");
  if (maxval != 255) {
    throw CodecError(ErrorCode::kUnsupportedDepth, "PNM maxval " + std::to_string(maxval));
  }
  reader.end_header();
  const std::size_t n = static_cast<std::size_t>(width * height * channels);
  const std::size_t start = reader.position();
  if (bytes.size() - start < n) {
    throw CodecError(ErrorCode::kTruncated, "PNM raster has " + std::to_string(bytes.size() - start) +
                                                " bytes, expected " + std::to_string(n));
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(start + n));
  return Image(static_cast<int>(width), static_cast<int>(height), channels, std::move(pixels));
}

Bytes encode_pnm(const Image& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

// ---------------------------------------------------------------------------
// PNG (libpng simplified API)

Image decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kPngSignature.size() ||
      !std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    throw CodecError(ErrorCode::kMalformedHeader, "missing PNG signature");
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    const std::string msg = image.message;
    png_image_free(&image);
    const bool truncated = msg.find("EOF") != std::string::npos ||
                           msg.find("ead past") != std::string::npos ||
                           msg.find("runcated") != std::string::npos;
    throw CodecError(truncated ? ErrorCode::kTruncated : ErrorCode::kMalformedHeader, msg);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw CodecError(ErrorCode::kUnsupportedDepth, "16-bit PNG");
  }
  if (image.format & PNG_FORMAT_FLAG_ALPHA) {
    png_image_free(&image);
    throw CodecError(ErrorCode::kUnsupportedFormat, "PNG with alpha channel");
  }
  const int channels = (image.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1;
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (image.width < 1 || image.height < 1 || image.width > kMaxSide || image.height > kMaxSide) {
    png_image_free(&image);
    throw CodecError(ErrorCode::kMalformedHeader, "bad PNG dimensions");
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw CodecError(ErrorCode::kTruncated, msg);
  }
  return Image(static_cast<int>(image.width), static_cast<int>(image.height), channels,
               std::move(pixels));
}

Bytes encode_png(const Image& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.pixels().data(), 0, nullptr)) {
    throw CodecError(ErrorCode::kIo, std::string("PNG encode: ") + image.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.pixels().data(), 0, nullptr)) {
    throw CodecError(ErrorCode::kIo, std::string("PNG encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

// ---------------------------------------------------------------------------
// IDX

std::vector<Image> decode_idx_images(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw CodecError(ErrorCode::kTruncated, "IDX shorter than its magic");
  if (bytes[0] != 0 || bytes[1] != 0) throw CodecError(ErrorCode::kMalformedHeader, "bad IDX magic");
  if (bytes[2] != kIdxTypeUnsignedByte) {
    throw CodecError(ErrorCode::kUnsupportedDepth, "IDX element type " + std::to_string(bytes[2]));
  }
  if (read_be32(bytes, 0) != kIdxImageMagic) {
    throw CodecError(ErrorCode::kMalformedHeader, "IDX is not a 3-d image tensor");
  }
  if (bytes.size() < 16) throw CodecError(ErrorCode::kTruncated, "IDX header ends early");
  const std::uint64_t count = read_be32(bytes, 4);
  const std::uint64_t rows = read_be32(bytes, 8);
  const std::uint64_t cols = read_be32(bytes, 12);
  if (rows < 1 || cols < 1 || rows > static_cast<std::uint64_t>(kMaxSide) ||
      cols > static_cast<std::uint64_t>(kMaxSide)) {
    throw CodecError(ErrorCode::kMalformedHeader, "bad IDX image dimensions");
  }
  const std::uint64_t per_image = rows * cols;
  if ((bytes.size() - 16) / per_image < count) {
    throw CodecError(ErrorCode::kTruncated, "IDX payload shorter than " + std::to_string(count) +
                                                " images");
  }
  std::vector<Image> images;
  images.reserve(count);
  auto it = bytes.begin() + 16;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::vector<std::uint8_t> pixels(it, it + static_cast<std::ptrdiff_t>(per_image));
    it += static_cast<std::ptrdiff_t>(per_image);
    images.emplace_back(static_cast<int>(cols), static_cast<int>(rows), 1, std::move(pixels));
  }
  return images;
}

Bytes encode_idx_images(std::span<const Image> images) {
  if (images.empty()) throw ImageError("IDX encode needs at least one image");
  const int w = images.front().width();
  const int h = images.front().height();
  Bytes out;
  out.reserve(16 + images.size() * static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  append_be32(out, kIdxImageMagic);
  append_be32(out, static_cast<std::uint32_t>(images.size()));
  append_be32(out, static_cast<std::uint32_t>(h));
  append_be32(out, static_cast<std::uint32_t>(w));
  for (const Image& img : images) {
    if (img.channels() != 1 || img.width() != w || img.height() != h) {
      throw ImageError("IDX images must be 1-channel and share one size");
    }
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  }
  return out;
}

std::vector<std::uint8_t> decode_idx_labels(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw CodecError(ErrorCode::kTruncated, "IDX shorter than its magic");
  if (bytes[0] != 0 || bytes[1] != 0) throw CodecError(ErrorCode::kMalformedHeader, "bad IDX magic");
  if (bytes[2] != kIdxTypeUnsignedByte) {
    throw CodecError(ErrorCode::kUnsupportedDepth, "IDX element type " + std::to_string(bytes[2]));
  }
  if (read_be32(bytes, 0) != kIdxLabelMagic) {
    throw CodecError(ErrorCode::kMalformedHeader, "IDX is not a label vector");
  }
  if (bytes.size() < 8) throw CodecError(ErrorCode::kTruncated, "IDX header ends early");
  const std::uint64_t count = read_be32(bytes, 4);
  if (bytes.size() - 8 < count) throw CodecError(ErrorCode::kTruncated, "IDX label payload short");
  return {bytes.begin() + 8, bytes.begin() + 8 + static_cast<std::ptrdiff_t>(count)};
}

Bytes encode_idx_labels(std::span<const std::uint8_t> labels) {
  Bytes out;
  out.reserve(8 + labels.size());
  append_be32(out, kIdxLabelMagic);
  append_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

// ---------------------------------------------------------------------------

Image decode_image(std::span<const std::uint8_t> bytes) {
  switch (detect_format(bytes)) {
    case Format::kPng: return decode_png(bytes);
    case Format::kPnm: return decode_pnm(bytes);
    case Format::kIdx: break;
  }
  throw CodecError(ErrorCode::kUnsupportedFormat, "IDX holds many images; use decode_idx_images");
}

Bytes encode_image(const Image& img, Format format) {
  switch (format) {
    case Format::kPng: return encode_png(img);
    case Format::kPnm: return encode_pnm(img);
    case Format::kIdx: return encode_idx_images(std::span<const Image>(&img, 1));
  }
  throw CodecError(ErrorCode::kUnsupportedFormat, "unknown format");
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError(ErrorCode::kIo, "cannot open " + path.string());
  Bytes out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw CodecError(ErrorCode::kIo, "read failed: " + path.string());
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  static std::atomic<std::uint64_t> counter{0};
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CodecError(ErrorCode::kIo, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw CodecError(ErrorCode::kIo, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CodecError(ErrorCode::kIo, "cannot rename onto " + path.string());
  }
}

std::vector<Image> load_idx_images(const std::filesystem::path& path) {
  return decode_idx_images(read_file(path));
}

void save_idx_images(const std::filesystem::path& path, std::span<const Image> images) {
  write_file_atomic(path, encode_idx_images(images));
}

}  // namespace erasekit::codec
