#include "imgql/grid.hpp"

#include <limits>
#include <stdexcept>

namespace imgql {

GridDims::GridDims(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) {
    throw std::invalid_argument("grid dimensions must be at least 1x1, got " +
                                std::to_string(w) + "x" + std::to_string(h));
  }
  // Guard the total voxel count before any allocation sized from it.
  const auto max = std::numeric_limits<std::size_t>::max();
  if (static_cast<std::size_t>(w) > max / static_cast<std::size_t>(h)) {
    throw std::invalid_argument("grid dimensions overflow addressable range");
  }
}

std::string GridDims::str() const {
  return std::to_string(width) + "x" + std::to_string(height);
}

void require_same_dims(const GridDims& a, const GridDims& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch, " +
                                a.str() + " vs " + b.str());
  }
}

namespace {
constexpr int kOrtho[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr int kOrthoDiag[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
}  // namespace

NeighbourOffsets neighbour_offsets(Adjacency adj) {
  if (adj == Adjacency::Orthogonal) return {kOrtho, 4};
  return {kOrthoDiag, 8};
}

BoolImage border_mask(GridDims dims) {
  BoolImage out(dims);
  for (int x = 0; x < dims.width; ++x) {
    out.set(x, 0, true);
    out.set(x, dims.height - 1, true);
  }
  for (int y = 0; y < dims.height; ++y) {
    out.set(0, y, true);
    out.set(dims.width - 1, y, true);
  }
  return out;
}

double volume(const BoolImage& b) {
  std::size_t n = 0;
  for (std::uint8_t v : b.bits()) n += v;
  return static_cast<double>(n);
}

BoolImage operator&(const BoolImage& a, const BoolImage& b) {
  require_same_dims(a.dims(), b.dims(), "and");
  BoolImage out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.at(i) && b.at(i));
  return out;
}

BoolImage operator|(const BoolImage& a, const BoolImage& b) {
  require_same_dims(a.dims(), b.dims(), "or");
  BoolImage out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, a.at(i) || b.at(i));
  return out;
}

BoolImage operator!(const BoolImage& a) {
  BoolImage out(a.dims());
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, !a.at(i));
  return out;
}

}  // namespace imgql
