#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "imgql/grid.hpp"

namespace imgql {

// k-bin count histogram over the value range [m, M]. Bin i (1-based)
// collects values v with (i-1)*delta <= v-m < i*delta, delta=(M-m)/k,
// except that v = M is counted in bin k; values outside [m, M] are dropped.
class Histogram {
public:
  Histogram() = default;
  Histogram(double m, double M, int k);

  double range_min() const { return m_; }
  double range_max() const { return M_; }
  int bin_count() const { return k_; }
  double bin_width() const { return (M_ - m_) / k_; }

  // Index of the bin receiving v, or -1 when v is out of range.
  int bin_of(double v) const;

  void add(double v) { bump(v, +1); }
  void remove(double v) { bump(v, -1); }

  std::int64_t count(int bin) const { return counts_[bin]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }
  std::int64_t total() const;

private:
  void bump(double v, std::int64_t delta);

  double m_ = 0.0;
  double M_ = 1.0;
  int k_ = 1;
  std::vector<std::int64_t> counts_;
};

// Square sampling window around a voxel: half-width floor(radius).
struct WindowSpec {
  double radius = 0.0;  // must be >= 0
  int half_width() const { return static_cast<int>(radius); }
};

// Histogram of image values over the mask-true voxels.
Histogram region_histogram(const ScalarImage& a, const BoolImage& mask,
                           double m, double M, int k);

// Mean of the bin counts themselves, (1/k) * sum counts[i].
double hist_mean(const Histogram& h);

// Normalised cross-correlation of two equal-length count sequences,
// in [-1, 1]. Degenerate cases: both sequences constant -> 1, exactly
// one constant -> 0.
double pearson(std::span<const double> h1, std::span<const double> h2);
double pearson(const Histogram& h1, const Histogram& h2);

// Per-voxel cross-correlation against a sample region: value at x is
// pearson(histogram of `a` over the window centred at x clipped to the
// grid, histogram of `b` over `region`). The region histogram is
// computed once.
//
// Both paths produce identical results; the sliding one updates the
// window histogram incrementally along a serpentine scan (counts are
// exact integers, so banding and traversal order cannot change the
// output). `threads` only applies to the sliding path.
ScalarImage cross_correlation_map(WindowSpec w, const ScalarImage& a,
                                  const ScalarImage& b, const BoolImage& region,
                                  double m, double M, int k, int threads = 1);
ScalarImage cross_correlation_map_naive(WindowSpec w, const ScalarImage& a,
                                        const ScalarImage& b,
                                        const BoolImage& region, double m,
                                        double M, int k);

}  // namespace imgql
