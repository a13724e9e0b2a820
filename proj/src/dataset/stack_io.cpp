// Copyright 2026 The PolarForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polarforge/dataset/stack_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <vector>

static_assert(std::endian::native == std::endian::little,
              "plane I/O assumes a little-endian host");

namespace polarforge::dataset {

namespace {

constexpr std::int64_t kMaxPlaneDim = 1 << 20;

void require_nonempty(const Plane& plane, const std::filesystem::path& path) {
  if (plane.empty()) {
    throw IoError("refusing to write empty plane: " + path.string());
  }
}

// RAII holder for libpng read/write structs so setjmp error exits clean up.
struct PngWriter {
  std::FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png != nullptr) png_destroy_write_struct(&png, &info);
    if (fp != nullptr) std::fclose(fp);
  }
};

struct PngReader {
  std::FILE* fp = nullptr;
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png != nullptr) png_destroy_read_struct(&png, &info, nullptr);
    if (fp != nullptr) std::fclose(fp);
  }
};

const std::array<const char*, 4> kAngleTags = {"000", "045", "090", "135"};

}  // namespace

std::string to_string(StackFormat format) {
  return format == StackFormat::kPfm ? "pfm" : "png16";
}

StackFormat stack_format_from_string(const std::string& name) {
  if (name == "pfm") return StackFormat::kPfm;
  if (name == "png16") return StackFormat::kPng16;
  throw std::invalid_argument("unknown stack format '" + name +
                              "' (expected pfm|png16)");
}

std::string format_extension(StackFormat format) {
  return format == StackFormat::kPfm ? ".pfm" : ".png";
}

void save_pfm(const std::filesystem::path& path, const Plane& plane) {
  require_nonempty(plane, path);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  // Grayscale PFM: negative scale declares little-endian payload, rows are
  // stored bottom-to-top.
  out << "Pf\n" << plane.width << " " << plane.height << "\n-1.0\n";
  for (int y = plane.height - 1; y >= 0; --y) {
    const float* row = plane.data.data() +
                       static_cast<size_t>(y) * static_cast<size_t>(plane.width);
    out.write(reinterpret_cast<const char*>(row),
              static_cast<std::streamsize>(plane.width) * sizeof(float));
  }
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

Plane load_pfm(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw FileMissingError("missing file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open for reading: " + path.string());
  }
  std::string magic;
  std::int64_t w = 0;
  std::int64_t h = 0;
  double scale = 0.0;
  in >> magic >> w >> h >> scale;
  if (!in || magic != "Pf" || w <= 0 || h <= 0 || w > kMaxPlaneDim ||
      h > kMaxPlaneDim || scale == 0.0) {
    throw CorruptHeaderError("corrupt PFM header: " + path.string());
  }
  in.get();  // the single whitespace byte terminating the header

  Plane plane(static_cast<int>(h), static_cast<int>(w));
  for (int y = plane.height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(&plane.at(y, 0)),
            static_cast<std::streamsize>(plane.width) * sizeof(float));
  }
  if (!in) {
    throw CorruptHeaderError("truncated PFM payload: " + path.string());
  }
  if (scale > 0.0) {  // big-endian payload
    for (float& f : plane.data) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, &f, sizeof(bits));
      bits = __builtin_bswap32(bits);
      std::memcpy(&f, &bits, sizeof(bits));
    }
  }
  return plane;
}

void save_png16(const std::filesystem::path& path, const Plane& plane) {
  require_nonempty(plane, path);
  PngWriter ctx;
  ctx.fp = std::fopen(path.string().c_str(), "wb");
  if (ctx.fp == nullptr) {
    throw IoError("cannot open for writing: " + path.string());
  }
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (ctx.png != nullptr) {
    ctx.info = png_create_info_struct(ctx.png);
  }
  if (ctx.png == nullptr || ctx.info == nullptr) {
    throw IoError("libpng init failed: " + path.string());
  }
  // All non-trivial locals are constructed before the setjmp point so a
  // libpng longjmp never skips their initialization.
  std::vector<std::uint16_t> row(static_cast<size_t>(plane.width));
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw IoError("PNG write failed: " + path.string());
  }
  png_init_io(ctx.png, ctx.fp);
  png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(plane.width),
               static_cast<png_uint_32>(plane.height), 16, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  png_set_swap(ctx.png);  // rows below are native little-endian

  for (int y = 0; y < plane.height; ++y) {
    for (int x = 0; x < plane.width; ++x) {
      const double v = std::clamp(static_cast<double>(plane.at(y, x)), 0.0, 1.0);
      row[static_cast<size_t>(x)] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
    }
    png_write_row(ctx.png, reinterpret_cast<png_bytep>(row.data()));
  }
  png_write_end(ctx.png, nullptr);
  if (std::fflush(ctx.fp) != 0) {
    throw IoError("write failed: " + path.string());
  }
}

Plane load_png16(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw FileMissingError("missing file: " + path.string());
  }
  PngReader ctx;
  ctx.fp = std::fopen(path.string().c_str(), "rb");
  if (ctx.fp == nullptr) {
    throw IoError("cannot open for reading: " + path.string());
  }
  unsigned char sig[8] = {};
  if (std::fread(sig, 1, 8, ctx.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw CorruptHeaderError("corrupt PNG header: " + path.string());
  }
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (ctx.png != nullptr) {
    ctx.info = png_create_info_struct(ctx.png);
  }
  if (ctx.png == nullptr || ctx.info == nullptr) {
    throw IoError("libpng init failed: " + path.string());
  }
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw CorruptHeaderError("corrupt PNG data: " + path.string());
  }
  png_init_io(ctx.png, ctx.fp);
  png_set_sig_bytes(ctx.png, 8);
  png_read_info(ctx.png, ctx.info);

  const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
  const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
  const int depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color = png_get_color_type(ctx.png, ctx.info);
  if (depth != 16 || color != PNG_COLOR_TYPE_GRAY || w == 0 || h == 0 ||
      static_cast<std::int64_t>(w) > kMaxPlaneDim ||
      static_cast<std::int64_t>(h) > kMaxPlaneDim) {
    throw CorruptHeaderError("unsupported PNG layout (need 16-bit grayscale): " +
                             path.string());
  }
  png_set_swap(ctx.png);

  // Re-arm the jump target after the row buffers exist, so a decode error
  // longjmp never skips their initialization.
  Plane plane(static_cast<int>(h), static_cast<int>(w));
  std::vector<std::uint16_t> row(static_cast<size_t>(w));
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw CorruptHeaderError("corrupt PNG data: " + path.string());
  }
  for (int y = 0; y < plane.height; ++y) {
    png_read_row(ctx.png, reinterpret_cast<png_bytep>(row.data()), nullptr);
    for (int x = 0; x < plane.width; ++x) {
      plane.at(y, x) = static_cast<float>(row[static_cast<size_t>(x)] / 65535.0);
    }
  }
  return plane;
}

void save_plane(const std::filesystem::path& path, const Plane& plane,
                StackFormat format) {
  if (format == StackFormat::kPfm) {
    save_pfm(path, plane);
  } else {
    save_png16(path, plane);
  }
}

Plane load_plane(const std::filesystem::path& path, StackFormat format) {
  return format == StackFormat::kPfm ? load_pfm(path) : load_png16(path);
}

std::string plane_filename(int angle_index, int channel, StackFormat format) {
  if (angle_index < 0 || angle_index >= 4 || channel < 0 || channel >= 3) {
    throw std::invalid_argument("plane index out of range");
  }
  return std::string("I") + kAngleTags[static_cast<size_t>(angle_index)] + "_" +
         kChannelNames[static_cast<size_t>(channel)] + format_extension(format);
}

void save_stack(const std::filesystem::path& dir, const PolarStack& stack,
                StackFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 3; ++c) {
      save_plane(dir / plane_filename(a, c, format), stack.images[a].channels[c],
                 format);
    }
  }
}

PolarStack load_stack(const std::filesystem::path& dir, StackFormat format,
                      int expect_h, int expect_w) {
  PolarStack stack;
  int ref_h = expect_h;
  int ref_w = expect_w;
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 3; ++c) {
      const std::filesystem::path path = dir / plane_filename(a, c, format);
      Plane plane = load_plane(path, format);
      if (ref_h == 0) {
        ref_h = plane.height;
        ref_w = plane.width;
      } else if (plane.height != ref_h || plane.width != ref_w) {
        throw DimensionMismatchError(
            "plane " + path.string() + " is " + std::to_string(plane.height) + "x" +
            std::to_string(plane.width) + ", expected " + std::to_string(ref_h) +
            "x" + std::to_string(ref_w));
      }
      stack.images[a].channels[c] = std::move(plane);
    }
  }
  return stack;
}

PolarStack load_external_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw FileMissingError("missing directory: " + dir.string());
  }
  const std::regex plane_like("^I[0-9]{3}_[a-z]\\.(pfm|png)$");
  std::set<std::string> found;
  bool has_pfm = false;
  bool has_png = false;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, plane_like)) {
      continue;  // manifests and other sidecar files are fine
    }
    found.insert(name);
    if (name.ends_with(".pfm")) has_pfm = true;
    if (name.ends_with(".png")) has_png = true;
  }
  if (has_pfm && has_png) {
    throw InconsistentFormatError("inconsistent format: " + dir.string() +
                                  " mixes .pfm and .png plane files");
  }
  const StackFormat format = has_png ? StackFormat::kPng16 : StackFormat::kPfm;

  std::set<std::string> expected;
  for (int a = 0; a < 4; ++a) {
    for (int c = 0; c < 3; ++c) {
      expected.insert(plane_filename(a, c, format));
    }
  }
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  for (const std::string& name : expected) {
    if (found.count(name) == 0) missing.push_back(name);
  }
  for (const std::string& name : found) {
    if (expected.count(name) == 0) extra.push_back(name);
  }
  if (!missing.empty() || !extra.empty()) {
    std::ostringstream msg;
    msg << "external stack directory " << dir.string() << " is not a 12-plane set:";
    if (!missing.empty()) {
      msg << " missing [";
      for (size_t i = 0; i < missing.size(); ++i) {
        msg << (i > 0 ? ", " : "") << missing[i];
      }
      msg << "]";
    }
    if (!extra.empty()) {
      msg << " unexpected [";
      for (size_t i = 0; i < extra.size(); ++i) {
        msg << (i > 0 ? ", " : "") << extra[i];
      }
      msg << "]";
    }
    throw FileMissingError(msg.str());
  }
  return load_stack(dir, format);
}

}  // namespace polarforge::dataset
