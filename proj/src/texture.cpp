#include "imgql/texture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace imgql {

Histogram::Histogram(double m, double M, int k) : m_(m), M_(M), k_(k) {
  if (!(M > m)) {
    throw std::invalid_argument("histogram range must satisfy M > m, got [" +
                                std::to_string(m) + ", " + std::to_string(M) + "]");
  }
  if (k < 1) {
    throw std::invalid_argument("histogram needs at least one bin, got k=" +
                                std::to_string(k));
  }
  counts_.assign(static_cast<std::size_t>(k), 0);
}

int Histogram::bin_of(double v) const {
  if (v < m_ || v > M_) return -1;
  if (v == M_) return k_ - 1;  // top edge folds into the last bin
  int i = static_cast<int>((v - m_) / bin_width());
  if (i >= k_) i = k_ - 1;
  return i;
}

void Histogram::bump(double v, std::int64_t delta) {
  const int i = bin_of(v);
  if (i >= 0) counts_[i] += delta;
}

std::int64_t Histogram::total() const {
  std::int64_t t = 0;
  for (std::int64_t c : counts_) t += c;
  return t;
}

Histogram region_histogram(const ScalarImage& a, const BoolImage& mask,
                           double m, double M, int k) {
  require_same_dims(a.dims(), mask.dims(), "regionHistogram");
  Histogram h(m, M, k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mask.at(i)) h.add(a.at(i));
  }
  return h;
}

double hist_mean(const Histogram& h) {
  double sum = 0.0;
  for (std::int64_t c : h.counts()) sum += static_cast<double>(c);
  return sum / h.bin_count();
}

namespace {

template <typename T>
double pearson_impl(std::span<const T> h1, std::span<const T> h2) {
  if (h1.size() != h2.size()) {
    throw std::invalid_argument("pearson: bin count mismatch, " +
                                std::to_string(h1.size()) + " vs " +
                                std::to_string(h2.size()));
  }
  const std::size_t k = h1.size();
  if (k == 0) throw std::invalid_argument("pearson: empty histograms");

  bool const1 = true, const2 = true;
  for (std::size_t i = 1; i < k; ++i) {
    if (h1[i] != h1[0]) const1 = false;
    if (h2[i] != h2[0]) const2 = false;
  }
  // A constant histogram has zero standard deviation; the normalised
  // coefficient is defined as 1 when both are constant, 0 when one is.
  if (const1 && const2) return 1.0;
  if (const1 || const2) return 0.0;

  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    m1 += static_cast<double>(h1[i]);
    m2 += static_cast<double>(h2[i]);
  }
  m1 /= static_cast<double>(k);
  m2 /= static_cast<double>(k);

  double num = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d1 = static_cast<double>(h1[i]) - m1;
    const double d2 = static_cast<double>(h2[i]) - m2;
    num += d1 * d2;
    s1 += d1 * d1;
    s2 += d2 * d2;
  }
  // Rounding can push a perfectly (anti)correlated pair an ulp past the
  // normalised range.
  return std::clamp(num / (std::sqrt(s1) * std::sqrt(s2)), -1.0, 1.0);
}

}  // namespace

double pearson(std::span<const double> h1, std::span<const double> h2) {
  return pearson_impl(h1, h2);
}

// Integer histograms admit an exact core: with S = sum h, Q = sum h^2,
// P = sum h1*h2, the coefficient is (kP - S1*S2) / sqrt((kQ1 - S1^2)(kQ2 - S2^2)),
// every term an exact int64. A zero radicand is exactly a constant
// histogram, and N^2 = R1*R2 is exactly perfect (anti)correlation, so the
// degenerate cases and the +/-1 results carry no rounding at all.
double pearson(const Histogram& h1, const Histogram& h2) {
  if (h1.bin_count() != h2.bin_count()) {
    throw std::invalid_argument("pearson: bin count mismatch, " +
                                std::to_string(h1.bin_count()) + " vs " +
                                std::to_string(h2.bin_count()));
  }
  const std::int64_t k = h1.bin_count();
  std::int64_t s1 = 0, s2 = 0, q1 = 0, q2 = 0, p = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t a = h1.count(static_cast<int>(i));
    const std::int64_t b = h2.count(static_cast<int>(i));
    s1 += a;
    s2 += b;
    q1 += a * a;
    q2 += b * b;
    p += a * b;
  }
  const std::int64_t num = k * p - s1 * s2;
  const std::int64_t r1 = k * q1 - s1 * s1;
  const std::int64_t r2 = k * q2 - s2 * s2;
  if (r1 == 0 && r2 == 0) return 1.0;
  if (r1 == 0 || r2 == 0) return 0.0;
  const __int128 nn = static_cast<__int128>(num) * num;
  const __int128 rr = static_cast<__int128>(r1) * r2;
  if (nn == rr) return num > 0 ? 1.0 : -1.0;
  const double r = static_cast<double>(num) /
                   (std::sqrt(static_cast<double>(r1)) * std::sqrt(static_cast<double>(r2)));
  return std::clamp(r, -1.0, 1.0);
}

namespace {

void check_map_args(const ScalarImage& a, const ScalarImage& b,
                    const BoolImage& region) {
  require_same_dims(a.dims(), b.dims(), "crossCorrelation");
  require_same_dims(a.dims(), region.dims(), "crossCorrelation");
}

// Adds (delta=+1) or removes (delta=-1) the values of one window column.
void bump_column(Histogram& h, const ScalarImage& a, int x, int y_lo, int y_hi,
                 bool add) {
  for (int y = y_lo; y <= y_hi; ++y) {
    if (add) h.add(a(x, y));
    else h.remove(a(x, y));
  }
}

void bump_row(Histogram& h, const ScalarImage& a, int y, int x_lo, int x_hi,
              bool add) {
  for (int x = x_lo; x <= x_hi; ++x) {
    if (add) h.add(a(x, y));
    else h.remove(a(x, y));
  }
}

Histogram full_window_histogram(const ScalarImage& a, int cx, int cy, int r,
                                double m, double M, int k) {
  const GridDims d = a.dims();
  Histogram h(m, M, k);
  const int x_lo = std::max(0, cx - r), x_hi = std::min(d.width - 1, cx + r);
  const int y_lo = std::max(0, cy - r), y_hi = std::min(d.height - 1, cy + r);
  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) h.add(a(x, y));
  }
  return h;
}

// Serpentine scan over rows [y0, y1), keeping the clipped window
// histogram up to date with column/row edge updates.
void sliding_band(const ScalarImage& a, const Histogram& region_hist,
                  int r, double m, double M, int k, int y0, int y1,
                  ScalarImage& out) {
  const GridDims d = a.dims();
  Histogram h = full_window_histogram(a, 0, y0, r, m, M, k);
  int x = 0;
  for (int y = y0; y < y1; ++y) {
    const int y_lo = std::max(0, y - r), y_hi = std::min(d.height - 1, y + r);
    const bool rightward = ((y - y0) % 2) == 0;
    const int x_end = rightward ? d.width - 1 : 0;
    const int step = rightward ? 1 : -1;
    while (true) {
      out.set(x, y, pearson(h, region_hist));
      if (x == x_end) break;
      const int nx = x + step;
      if (rightward) {
        const int old_lo = std::max(0, x - r), new_lo = std::max(0, nx - r);
        for (int c = old_lo; c < new_lo; ++c) bump_column(h, a, c, y_lo, y_hi, false);
        const int old_hi = std::min(d.width - 1, x + r);
        const int new_hi = std::min(d.width - 1, nx + r);
        for (int c = old_hi + 1; c <= new_hi; ++c) bump_column(h, a, c, y_lo, y_hi, true);
      } else {
        const int old_hi = std::min(d.width - 1, x + r);
        const int new_hi = std::min(d.width - 1, nx + r);
        for (int c = new_hi + 1; c <= old_hi; ++c) bump_column(h, a, c, y_lo, y_hi, false);
        const int old_lo = std::max(0, x - r), new_lo = std::max(0, nx - r);
        for (int c = new_lo; c < old_lo; ++c) bump_column(h, a, c, y_lo, y_hi, true);
      }
      x = nx;
    }
    if (y + 1 < y1) {
      const int x_lo = std::max(0, x - r), x_hi = std::min(d.width - 1, x + r);
      const int old_lo_y = y_lo, new_lo_y = std::max(0, y + 1 - r);
      for (int row = old_lo_y; row < new_lo_y; ++row) bump_row(h, a, row, x_lo, x_hi, false);
      const int old_hi_y = y_hi, new_hi_y = std::min(d.height - 1, y + 1 + r);
      for (int row = old_hi_y + 1; row <= new_hi_y; ++row) bump_row(h, a, row, x_lo, x_hi, true);
    }
  }
}

}  // namespace

ScalarImage cross_correlation_map_naive(WindowSpec w, const ScalarImage& a,
                                        const ScalarImage& b,
                                        const BoolImage& region, double m,
                                        double M, int k) {
  check_map_args(a, b, region);
  if (w.radius < 0.0) throw std::invalid_argument("window radius must be >= 0");
  const Histogram region_hist = region_histogram(b, region, m, M, k);
  const int r = w.half_width();
  const GridDims d = a.dims();
  ScalarImage out(d);
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      const Histogram h = full_window_histogram(a, x, y, r, m, M, k);
      out.set(x, y, pearson(h, region_hist));
    }
  }
  return out;
}

ScalarImage cross_correlation_map(WindowSpec w, const ScalarImage& a,
                                  const ScalarImage& b, const BoolImage& region,
                                  double m, double M, int k, int threads) {
  check_map_args(a, b, region);
  if (w.radius < 0.0) throw std::invalid_argument("window radius must be >= 0");
  const Histogram region_hist = region_histogram(b, region, m, M, k);
  const int r = w.half_width();
  const GridDims d = a.dims();
  ScalarImage out(d);

  const int bands = std::clamp(threads, 1, d.height);
  if (bands == 1) {
    sliding_band(a, region_hist, r, m, M, k, 0, d.height, out);
    return out;
  }
  std::vector<std::thread> workers;
  workers.reserve(bands);
  const int rows_per_band = (d.height + bands - 1) / bands;
  for (int i = 0; i < bands; ++i) {
    const int y0 = i * rows_per_band;
    const int y1 = std::min(d.height, y0 + rows_per_band);
    if (y0 >= y1) break;
    workers.emplace_back([&, y0, y1] {
      sliding_band(a, region_hist, r, m, M, k, y0, y1, out);
    });
  }
  for (auto& t : workers) t.join();
  return out;
}

}  // namespace imgql
