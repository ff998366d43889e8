#include "imgql/metrics.hpp"

#include "imgql/spatial.hpp"

namespace imgql {

namespace {

double ratio_or_one(double num, double den) {
  return den == 0.0 ? 1.0 : num / den;
}

}  // namespace

MetricsRecord confusion(const BoolImage& pred, const BoolImage& truth) {
  require_same_dims(pred.dims(), truth.dims(), "confusion");
  MetricsRecord r;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred.at(i), t = truth.at(i);
    if (p && t) ++r.tp;
    else if (p && !t) ++r.fp;
    else if (!p && t) ++r.fn;
    else ++r.tn;
  }
  return r;
}

double dice_index(const BoolImage& x, const BoolImage& y) {
  const MetricsRecord r = confusion(x, y);
  return ratio_or_one(2.0 * r.tp, 2.0 * r.tp + r.fp + r.fn);
}

double jaccard_index(const BoolImage& x, const BoolImage& y) {
  const double d = dice_index(x, y);
  return d / (2.0 - d);
}

double sensitivity_index(const BoolImage& x, const BoolImage& y) {
  const MetricsRecord r = confusion(x, y);
  return ratio_or_one(static_cast<double>(r.tp), static_cast<double>(r.tp + r.fn));
}

double specificity_index(const BoolImage& x, const BoolImage& y) {
  const MetricsRecord r = confusion(x, y);
  return ratio_or_one(static_cast<double>(r.tn), static_cast<double>(r.tn + r.fp));
}

double accuracy_index(const BoolImage& x, const BoolImage& y) {
  const MetricsRecord r = confusion(x, y);
  return static_cast<double>(r.tp + r.tn) /
         static_cast<double>(r.tp + r.tn + r.fp + r.fn);
}

MetricsRecord compute_metrics(const BoolImage& pred, const BoolImage& truth) {
  MetricsRecord r = confusion(pred, truth);
  r.dice = ratio_or_one(2.0 * r.tp, 2.0 * r.tp + r.fp + r.fn);
  r.jaccard = r.dice / (2.0 - r.dice);
  r.sensitivity = ratio_or_one(static_cast<double>(r.tp),
                               static_cast<double>(r.tp + r.fn));
  r.specificity = ratio_or_one(static_cast<double>(r.tn),
                               static_cast<double>(r.tn + r.fp));
  r.accuracy = static_cast<double>(r.tp + r.tn) /
               static_cast<double>(r.tp + r.tn + r.fp + r.fn);
  return r;
}

BoolImage iboundary(const BoolImage& x, Adjacency adj) {
  const BoolImage inner = interior(x, adj);
  return closure(inner, adj) & !inner;
}

double polsby_popper(const BoolImage& x, Adjacency adj) {
  const double perimeter = volume(iboundary(x, adj));
  if (perimeter == 0.0) return 0.0;
  return (volume(x) * 4.0 * 3.14) / (perimeter * perimeter);
}

}  // namespace imgql
