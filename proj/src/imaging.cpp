#include "imgql/imaging.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

namespace imgql {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw std::runtime_error("png: " + path + ": " + why);
}

}  // namespace

ColorImage load_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) fail(path, "cannot open file");

  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
    fail(path, "not a PNG file");
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(path, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "undecodable file");
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);

  if (depth == 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported bit depth 16 (only 8-bit images are accepted)");
  }

  // Normalise every accepted layout to 8-bit RGB.
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  if (png_get_channels(png, info) != 3 || png_get_bit_depth(png, info) != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(path, "unsupported pixel layout");
  }

  ColorImage out(GridDims(static_cast<int>(w), static_cast<int>(h)));
  std::vector<png_byte> row(static_cast<std::size_t>(w) * 3);
  for (png_uint_32 y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (png_uint_32 x = 0; x < w; ++x) {
      out.set(static_cast<int>(x), static_cast<int>(y),
              Rgb{row[x * 3], row[x * 3 + 1], row[x * 3 + 2]});
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

namespace {

void write_gray_png(const std::string& path, GridDims dims,
                    const std::vector<std::uint8_t>& gray) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) fail(path, "cannot open file for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(path, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(path, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(path, "write error");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, dims.width, dims.height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < dims.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(gray.data() + dims.index(0, y)));
  }
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void save_png(const std::string& path, const BoolImage& img) {
  std::vector<std::uint8_t> gray(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) gray[i] = img.at(i) ? 255 : 0;
  write_gray_png(path, img.dims(), gray);
}

void save_png(const std::string& path, const ScalarImage& img) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : img.values()) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::vector<std::uint8_t> gray(img.size(), 0);
  const bool flat = !(hi > lo);  // all equal, or no finite values at all
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double v = img.at(i);
    if (std::isinf(v)) {
      gray[i] = v > 0 ? 255 : 0;
    } else if (!flat) {
      gray[i] = static_cast<std::uint8_t>(std::round((v - lo) / (hi - lo) * 255.0));
    }
  }
  write_gray_png(path, img.dims(), gray);
}

ScalarImage intensity(const ColorImage& c, IntensityMode mode) {
  ScalarImage out(c.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Rgb p = c.at(i);
    const double v = mode == IntensityMode::Rec601
                         ? 0.299 * p.r + 0.587 * p.g + 0.114 * p.b
                         : (p.r + p.g + p.b) / 3.0;
    out.set(i, v);
  }
  return out;
}

ScalarImage color_proj(const ColorImage& c, Channel ch) {
  ScalarImage out(c.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Rgb p = c.at(i);
    out.set(i, ch == Channel::Red ? p.r : ch == Channel::Green ? p.g : p.b);
  }
  return out;
}

double min_value(const ScalarImage& a) {
  double v = std::numeric_limits<double>::infinity();
  for (double x : a.values()) v = std::min(v, x);
  return v;
}

double max_value(const ScalarImage& a) {
  double v = -std::numeric_limits<double>::infinity();
  for (double x : a.values()) v = std::max(v, x);
  return v;
}

double num_arith(ArithOp op, double x, double y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div:
      if (y == 0.0) {
        if (x == 0.0) throw std::domain_error("0 ./. 0 is undefined");
        return std::copysign(std::numeric_limits<double>::infinity(), x);
      }
      return x / y;
  }
  throw std::logic_error("unreachable");
}

bool num_compare(CmpOp op, double x, double y) {
  return op == CmpOp::Gt ? x > y : x < y;
}

ScalarImage voxel_arith(ArithOp op, const ScalarImage& lhs, const ScalarImage& rhs) {
  require_same_dims(lhs.dims(), rhs.dims(), "image arithmetic");
  ScalarImage out(lhs.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set(i, num_arith(op, lhs.at(i), rhs.at(i)));
  }
  return out;
}

ScalarImage voxel_arith(ArithOp op, const ScalarImage& lhs, double rhs) {
  ScalarImage out(lhs.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set(i, num_arith(op, lhs.at(i), rhs));
  }
  return out;
}

BoolImage voxel_compare(CmpOp op, const ScalarImage& lhs, const ScalarImage& rhs) {
  require_same_dims(lhs.dims(), rhs.dims(), "image comparison");
  BoolImage out(lhs.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set(i, num_compare(op, lhs.at(i), rhs.at(i)));
  }
  return out;
}

BoolImage voxel_compare(CmpOp op, const ScalarImage& lhs, double rhs) {
  BoolImage out(lhs.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set(i, num_compare(op, lhs.at(i), rhs));
  }
  return out;
}

BoolImage if_bool(bool cond, const BoolImage& t, const BoolImage& f) {
  require_same_dims(t.dims(), f.dims(), "ifB");
  return cond ? t : f;
}

}  // namespace imgql
