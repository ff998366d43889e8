#include "fixtures.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <vector>

#include "imgql/imaging.hpp"

namespace imgql::fixtures {

namespace {

std::uint8_t noise_in(std::mt19937_64& gen, int lo, int hi) {
  return static_cast<std::uint8_t>(lo + static_cast<int>(gen() % (hi - lo)));
}

}  // namespace

// The tool only ever writes grayscale; test fixtures need RGB files, so
// the writer lives here.
void write_rgb_png(const std::string& path, const ColorImage& img) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("fixture: cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("fixture: png write error for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, img.width(), img.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(img.width()) * 3);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb p = img(x, y);
      row[x * 3] = p.r;
      row[x * 3 + 1] = p.g;
      row[x * 3 + 2] = p.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

NevusFixture make_nevus_fixture(int width, int height) {
  const GridDims dims(width, height);
  const double scale = std::min(width / 1022.0, height / 767.0);

  const double cx = width / 2.0, cy = height / 2.0;
  const double core_r = 212.0 * scale;
  const double truth_r = 220.0 * scale;
  const double corner_r = 130.0 * scale;

  // Patch rectangle on the bottom border, clear of the disk.
  const int patch_w = std::max(8, static_cast<int>(60 * scale));
  const int patch_h = std::max(6, static_cast<int>(40 * scale));
  const int patch_x0 = static_cast<int>(cx - patch_w / 2);
  const int patch_y0 = height - patch_h;

  NevusFixture fx;
  fx.image = ColorImage(dims);
  fx.truth_rgb = ColorImage(dims);
  fx.truth_mask = BoolImage(dims);
  fx.patch_rect = BoolImage(dims);
  fx.corner_mask = BoolImage(dims);

  std::mt19937_64 gen(0x5eed1234abcdefULL);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double dx = x - cx, dy = y - cy;
      const double rr = std::sqrt(dx * dx + dy * dy);

      const double corner_d = std::min(
          std::min(std::hypot(x, y), std::hypot(width - 1.0 - x, y)),
          std::min(std::hypot(x, height - 1.0 - y),
                   std::hypot(width - 1.0 - x, height - 1.0 - y)));

      std::uint8_t v;
      if (corner_d < corner_r) {
        v = noise_in(gen, 0, 25);
        fx.corner_mask.set(x, y, true);
      } else if (rr < core_r) {
        v = noise_in(gen, 12, 40);
      } else if (rr < truth_r + 8.0 * scale) {
        // Gradient rim from nevus-dark up to background-light; windows
        // overlapping it fill the mid-range histogram bins.
        const double t = (rr - core_r) / (truth_r + 8.0 * scale - core_r);
        v = static_cast<std::uint8_t>(40.0 + t * 140.0);
      } else {
        v = noise_in(gen, 180, 230);
      }
      fx.image.set(x, y, Rgb{v, v, v});

      const bool is_truth = rr <= truth_r;
      fx.truth_mask.set(x, y, is_truth);
      if (is_truth) fx.truth_rgb.set(x, y, Rgb{255, 255, 255});

      if (x >= patch_x0 && x < patch_x0 + patch_w && y >= patch_y0) {
        fx.image.set(x, y, Rgb{25, 25, 215});
        fx.patch_rect.set(x, y, true);
      }
    }
  }
  // Pin the intensity range so the histogram layout is stable.
  fx.image.set(0, 0, Rgb{0, 0, 0});
  fx.image.set(static_cast<int>(cx), 1, Rgb{230, 230, 230});
  return fx;
}

void write_fixture_pair(const NevusFixture& fx, const std::string& dir,
                        const std::string& name) {
  std::filesystem::create_directories(dir);
  write_rgb_png(dir + "/" + name + ".png", fx.image);
  write_rgb_png(dir + "/" + name + "_seg_RGB.png", fx.truth_rgb);
}

std::string temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("imgql_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace imgql::fixtures
