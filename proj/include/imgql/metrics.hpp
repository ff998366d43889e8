#pragma once

#include <cstdint>

#include "imgql/grid.hpp"

namespace imgql {

// Confusion counts and the five similarity indexes for a predicted mask
// against a ground-truth mask. Vacuous 0/0 denominators resolve to 1
// (perfect agreement on absence) so batch runs stay total.
struct MetricsRecord {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
  double dice = 0.0;
  double jaccard = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double accuracy = 0.0;
};

MetricsRecord confusion(const BoolImage& pred, const BoolImage& truth);

double dice_index(const BoolImage& x, const BoolImage& y);
double jaccard_index(const BoolImage& x, const BoolImage& y);
double sensitivity_index(const BoolImage& x, const BoolImage& y);
double specificity_index(const BoolImage& x, const BoolImage& y);
double accuracy_index(const BoolImage& x, const BoolImage& y);

// Fills the five indexes from already-computed counts.
MetricsRecord compute_metrics(const BoolImage& pred, const BoolImage& truth);

// Internal boundary: near(interior(x)) & !interior(x).
BoolImage iboundary(const BoolImage& x, Adjacency adj);

// Polsby-Popper compactness (volume * 4 * 3.14) / volume(iboundary)^2,
// with the constant 3.14 the segmentation thresholds were tuned against.
// A zero-length boundary yields 0.
double polsby_popper(const BoolImage& x, Adjacency adj);

}  // namespace imgql
