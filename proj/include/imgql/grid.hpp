#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace imgql {

// Voxel adjacency on the 2D grid. Both relations are reflexive and
// symmetric; orthodiagonal additionally links voxels sharing only a corner.
enum class Adjacency { Orthogonal, Orthodiagonal };

struct GridDims {
  int width = 0;
  int height = 0;

  GridDims() = default;
  GridDims(int w, int h);

  std::size_t size() const { return static_cast<std::size_t>(width) * height; }
  bool contains(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  bool operator==(const GridDims& o) const = default;
  std::string str() const;
};

// Throws if a and b differ, naming both in the message.
void require_same_dims(const GridDims& a, const GridDims& b, const char* what);

// Satisfaction set of a formula: one boolean per voxel, row-major.
class BoolImage {
public:
  BoolImage() = default;
  explicit BoolImage(GridDims dims, bool fill = false)
      : dims_(dims), bits_(dims.size(), fill ? 1 : 0) {}

  const GridDims& dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  std::size_t size() const { return bits_.size(); }

  bool operator()(int x, int y) const { return bits_[dims_.index(x, y)] != 0; }
  bool at(std::size_t i) const { return bits_[i] != 0; }
  void set(int x, int y, bool v) { bits_[dims_.index(x, y)] = v ? 1 : 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const BoolImage& o) const = default;

private:
  GridDims dims_;
  std::vector<std::uint8_t> bits_;
};

// Quantitative image: one double per voxel. Values may be +infinity
// (distance to the empty set) but must never be NaN.
class ScalarImage {
public:
  ScalarImage() = default;
  explicit ScalarImage(GridDims dims, double fill = 0.0)
      : dims_(dims), values_(dims.size(), fill) {}

  const GridDims& dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }
  std::size_t size() const { return values_.size(); }

  double operator()(int x, int y) const { return values_[dims_.index(x, y)]; }
  double at(std::size_t i) const { return values_[i]; }
  void set(int x, int y, double v) { values_[dims_.index(x, y)] = v; }
  void set(std::size_t i, double v) { values_[i] = v; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  bool operator==(const ScalarImage& o) const = default;

private:
  GridDims dims_;
  std::vector<double> values_;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb& o) const = default;
};

// 8-bit RGB image as loaded from file.
class ColorImage {
public:
  ColorImage() = default;
  explicit ColorImage(GridDims dims, Rgb fill = {})
      : dims_(dims), pixels_(dims.size(), fill) {}

  const GridDims& dims() const { return dims_; }
  int width() const { return dims_.width; }
  int height() const { return dims_.height; }

  Rgb operator()(int x, int y) const { return pixels_[dims_.index(x, y)]; }
  Rgb at(std::size_t i) const { return pixels_[i]; }
  void set(int x, int y, Rgb v) { pixels_[dims_.index(x, y)] = v; }

  const std::vector<Rgb>& pixels() const { return pixels_; }

  bool operator==(const ColorImage& o) const = default;

private:
  GridDims dims_;
  std::vector<Rgb> pixels_;
};

// Neighbour offsets for an adjacency kind, excluding the voxel itself.
// Orthogonal: 4 entries; orthodiagonal: 8.
struct NeighbourOffsets {
  const int (*dxdy)[2];
  int count;
};
NeighbourOffsets neighbour_offsets(Adjacency adj);

// True exactly on the one-voxel-wide edge of the grid.
BoolImage border_mask(GridDims dims);

// Number of true voxels, as a real (it feeds real arithmetic in scripts).
double volume(const BoolImage& b);

// Pointwise boolean algebra. Dimension mismatches throw.
BoolImage operator&(const BoolImage& a, const BoolImage& b);
BoolImage operator|(const BoolImage& a, const BoolImage& b);
BoolImage operator!(const BoolImage& a);

}  // namespace imgql
