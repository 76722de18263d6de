/* Copyright 2026 The signpose Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "signpose/image.hpp"

#include <png.h>

#include <cstring>

#include "signpose/error.hpp"
#include "signpose/pose_io.hpp"

namespace signpose {

Image::Image(int w, int h, int c, std::uint8_t fill)
    : width(w), height(h), channels(c),
      data(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * static_cast<std::size_t>(c), fill) {
  if (w < 0 || h < 0 || (c != 1 && c != 3)) throw InvalidArgument("image: invalid dimensions");
}

void Image::validate() const {
  if (channels != 1 && channels != 3) throw InvalidArgument("image: channels must be 1 or 3");
  if (width < 0 || height < 0) throw InvalidArgument("image: negative dimensions");
  const std::size_t want =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * static_cast<std::size_t>(channels);
  if (data.size() != want) throw InvalidArgument("image: buffer size does not match dimensions");
}

std::vector<double> luma(const Image& img) {
  img.validate();
  const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  std::vector<double> out(n);
  if (img.channels == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = img.data[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = 0.299 * img.data[3 * i] + 0.587 * img.data[3 * i + 1] + 0.114 * img.data[3 * i + 2];
    }
  }
  return out;
}

Image to_rgb(const Image& img) {
  img.validate();
  if (img.channels == 3) return img;
  Image out(img.width, img.height, 3);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    out.data[3 * i] = out.data[3 * i + 1] = out.data[3 * i + 2] = img.data[i];
  }
  return out;
}

namespace {

void on_png_error(png_structp png, png_const_charp msg) {
  auto* err = static_cast<std::string*>(png_get_error_ptr(png));
  if (err) *err = msg;
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct ReadCursor {
  std::string_view bytes;
  std::size_t pos = 0;
};

void read_from_memory(png_structp png, png_bytep out, png_size_t len) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + len > cur->bytes.size()) png_error(png, "truncated PNG stream");
  std::memcpy(out, cur->bytes.data() + cur->pos, len);
  cur->pos += len;
}

void write_to_memory(png_structp png, png_bytep in, png_size_t len) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(in), len);
}

void flush_noop(png_structp) {}

}  // namespace

std::string encode_png(const Image& img) {
  img.validate();
  if (img.empty()) throw InvalidArgument("encode_png: empty image");
  std::string error;
  std::string out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
  if (!png) throw Error("encode_png: out of memory");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("encode_png: out of memory");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("encode_png: " + error);
  }
  png_set_write_fn(png, &out, write_to_memory, flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.channels);
  for (int y = 0; y < img.height; ++y) {
    rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(img.data.data() + static_cast<std::size_t>(y) * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

Image decode_png(std::string_view bytes) {
  if (bytes.size() < 8 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    throw InvalidArgument("decode_png: not a PNG stream");
  }
  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, on_png_error, on_png_warning);
  if (!png) throw Error("decode_png: out of memory");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("decode_png: out of memory");
  }
  ReadCursor cursor{bytes, 0};
  Image img;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InvalidArgument("decode_png: " + error);
  }
  png_set_read_fn(png, &cursor, read_from_memory);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  const int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InvalidArgument("decode_png: unsupported channel layout");
  }
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.channels = channels;
  img.data.assign(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) *
                      static_cast<std::size_t>(channels),
                  0);
  rows.resize(static_cast<std::size_t>(img.height));
  const std::size_t stride = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(channels);
  for (int y = 0; y < img.height; ++y) rows[static_cast<std::size_t>(y)] = img.data.data() + static_cast<std::size_t>(y) * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

Image read_png(const std::string& path) {
  try {
    return decode_png(read_file(path));
  } catch (const InvalidArgument& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

void write_png(const Image& img, const std::string& path) { write_file(path, encode_png(img)); }

}  // namespace signpose
