#pragma once

#include <string>

#include "imgql/grid.hpp"

// Synthetic inputs shared by the unit and acceptance suites.
namespace imgql::fixtures {

// A dermoscopy-like test image: light textured background, one dark
// compact disk with a gradient rim, black corner artifacts, and a
// saturated-blue patch on the bottom border. The ground truth is the
// disk out to the rim's midtone radius.
struct NevusFixture {
  ColorImage image;
  ColorImage truth_rgb;
  BoolImage truth_mask;
  BoolImage patch_rect;   // the blue rectangle itself
  BoolImage corner_mask;  // union of the four corner artifacts
};

// Geometry scales with the smaller relative dimension, so reduced sizes
// keep the same layout.
NevusFixture make_nevus_fixture(int width = 1022, int height = 767);

// Writes <dir>/<name>.png and <dir>/<name>_seg_RGB.png.
void write_fixture_pair(const NevusFixture& fx, const std::string& dir,
                        const std::string& name);

void write_rgb_png(const std::string& path, const ColorImage& img);

// Fresh directory under the system temp root; wiped if it exists.
std::string temp_dir(const std::string& tag);

}  // namespace imgql::fixtures
