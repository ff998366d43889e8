#include <doctest.h>

#include <stdexcept>

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <limits>

#include "fixtures.hpp"
#include "imgql/imaging.hpp"
#include "oracle.hpp"

using namespace imgql;

namespace {

std::string tmp_path(const std::string& name) {
  static const std::string dir = fixtures::temp_dir("imaging");
  return dir + "/" + name;
}

void write_gray16_png(const std::string& path, int w, int h) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  REQUIRE(fp != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(setjmp(png_jmpbuf(png)) == 0);
  png_init_io(png, fp);
  png_set_IHDR(png, info, w, h, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_byte> row(static_cast<std::size_t>(w) * 2, 0x7f);
  for (int y = 0; y < h; ++y) png_write_row(png, row.data());
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

TEST_CASE("rgb png round trip") {
  ColorImage img(GridDims(2, 2));
  img.set(0, 0, {10, 20, 30});
  img.set(1, 0, {200, 100, 50});
  img.set(0, 1, {0, 0, 0});
  img.set(1, 1, {255, 255, 255});
  const std::string path = tmp_path("roundtrip.png");
  fixtures::write_rgb_png(path, img);
  CHECK(load_png(path) == img);
}

TEST_CASE("grayscale png replicates the channel") {
  BoolImage mask(GridDims(3, 2));
  mask.set(1, 0, true);
  mask.set(2, 1, true);
  const std::string path = tmp_path("gray.png");
  save_png(path, mask);
  const ColorImage back = load_png(path);
  CHECK(back(1, 0) == Rgb{255, 255, 255});
  CHECK(back(0, 0) == Rgb{0, 0, 0});
}

TEST_CASE("grayscale mid-tone replicates into all channels") {
  ScalarImage img(GridDims(3, 1));
  img.set(0, 0, 0.0);
  img.set(1, 0, 128.0);
  img.set(2, 0, 255.0);  // rescale maps these to 0, 128, 255 exactly
  const std::string path = tmp_path("mid.png");
  save_png(path, img);
  const ColorImage back = load_png(path);
  CHECK(back(1, 0) == Rgb{128, 128, 128});
}

TEST_CASE("16-bit png is rejected with the path") {
  const std::string path = tmp_path("deep.png");
  write_gray16_png(path, 4, 3);
  CHECK_THROWS_WITH_AS(load_png(path), doctest::Contains("deep.png"),
                       std::runtime_error);
}

TEST_CASE("missing and undecodable files are rejected") {
  CHECK_THROWS_WITH_AS(load_png(tmp_path("absent.png")),
                       doctest::Contains("absent.png"), std::runtime_error);
  const std::string junk = tmp_path("junk.png");
  std::FILE* f = std::fopen(junk.c_str(), "wb");
  std::fputs("not a png at all", f);
  std::fclose(f);
  CHECK_THROWS_AS(load_png(junk), std::runtime_error);
}

TEST_CASE("boolean mask round trip is the identity on bits") {
  const BoolImage mask = oracle::random_image(GridDims(17, 11), 99, 0.5);
  const std::string path = tmp_path("mask.png");
  save_png(path, mask);
  const ScalarImage inten = intensity(load_png(path));
  const BoolImage back = voxel_compare(CmpOp::Gt, inten, 0.0);
  CHECK(back == mask);
}

TEST_CASE("scalar save rescales min-max") {
  ScalarImage img(GridDims(3, 1));
  img.set(0, 0, 0.0);
  img.set(1, 0, 5.0);
  img.set(2, 0, 10.0);
  const std::string path = tmp_path("scalar.png");
  save_png(path, img);
  const ColorImage back = load_png(path);
  CHECK(back(0, 0).r == 0);
  CHECK(back(1, 0).r == 128);  // 127.5 rounds half away from zero
  CHECK(back(2, 0).r == 255);

  save_png(path, ScalarImage(GridDims(3, 1), 7.0));
  const ColorImage flat = load_png(path);
  for (const Rgb p : flat.pixels()) CHECK(p.r == 0);  // all-equal
}

TEST_CASE("intensity formulas") {
  ColorImage c(GridDims(3, 1));
  c.set(0, 0, {77, 77, 77});
  c.set(1, 0, {0, 0, 0});
  c.set(2, 0, {255, 0, 0});
  const ScalarImage lum = intensity(c);
  CHECK(lum(0, 0) == doctest::Approx(77.0));
  CHECK(lum(1, 0) == 0.0);
  CHECK(lum(2, 0) == doctest::Approx(76.245));
  const ScalarImage mean = intensity(c, IntensityMode::Mean);
  CHECK(mean(2, 0) == doctest::Approx(85.0));
}

TEST_CASE("channel projections") {
  ColorImage c(GridDims(1, 1));
  c.set(0, 0, {10, 20, 30});
  CHECK(color_proj(c, Channel::Red)(0, 0) == 10);
  CHECK(color_proj(c, Channel::Green)(0, 0) == 20);
  CHECK(color_proj(c, Channel::Blue)(0, 0) == 30);
}

TEST_CASE("min and max over all voxels") {
  ScalarImage a(GridDims(3, 3));
  for (int i = 0; i < 9; ++i) a.set(i, static_cast<double>(i + 1));
  CHECK(min_value(a) == 1.0);
  CHECK(max_value(a) == 9.0);
  CHECK(min_value(ScalarImage(GridDims(2, 2), 4.0)) == 4.0);
  CHECK(max_value(ScalarImage(GridDims(2, 2), 4.0)) == 4.0);

  const double inf = std::numeric_limits<double>::infinity();
  const ScalarImage allinf(GridDims(2, 2), inf);
  CHECK(min_value(allinf) == inf);
  CHECK(max_value(allinf) == inf);
}

TEST_CASE("voxelwise arithmetic and comparison") {
  const GridDims d(4, 4);
  ScalarImage a(d, 30.0);
  a.set(0, 0, 50.0);

  const BoolImage dark = voxel_compare(CmpOp::Lt, a, 40.0);
  CHECK_FALSE(dark(0, 0));
  CHECK(dark(1, 1));

  CHECK(volume(voxel_compare(CmpOp::Gt, a, a)) == 0);  // strict

  const ScalarImage shifted = voxel_arith(ArithOp::Add, a, 30.0);
  CHECK(shifted(0, 0) == 80.0);
  CHECK(shifted(1, 1) == 60.0);

  CHECK_THROWS_AS(voxel_arith(ArithOp::Add, a, ScalarImage(GridDims(5, 4))),
                  std::invalid_argument);
}

TEST_CASE("number arithmetic") {
  CHECK(num_arith(ArithOp::Mul, 2.0, num_arith(ArithOp::Add, 1022.0, 767.0)) == 3578.0);
  CHECK(num_arith(ArithOp::Div, 5.0, 2.0) == 2.5);
  CHECK(num_compare(CmpOp::Lt, 3.0, 3.0) == false);
  CHECK(num_arith(ArithOp::Div, 1.0, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(num_arith(ArithOp::Div, -1.0, 0.0) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(num_arith(ArithOp::Div, 0.0, 0.0), std::domain_error);
}

TEST_CASE("boolean conditional picks a branch") {
  const GridDims d(3, 3);
  const BoolImage a = oracle::random_image(d, 1, 0.5);
  const BoolImage b = oracle::random_image(d, 2, 0.5);
  CHECK(if_bool(true, a, b) == a);
  CHECK(if_bool(false, a, b) == b);
  CHECK_THROWS_AS(if_bool(true, a, BoolImage(GridDims(2, 2))), std::invalid_argument);
}
