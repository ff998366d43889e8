#pragma once

#include <cstdint>
#include <vector>

#include "imgql/grid.hpp"

namespace imgql {

// Connected-component labelling of the true set. Labels are contiguous
// 1..K in row-major first-encounter order; 0 is background.
class LabelImage {
public:
  LabelImage() = default;
  explicit LabelImage(GridDims dims)
      : dims_(dims), labels_(dims.size(), 0), count_(0) {}

  const GridDims& dims() const { return dims_; }
  std::uint32_t operator()(int x, int y) const { return labels_[dims_.index(x, y)]; }
  std::uint32_t at(std::size_t i) const { return labels_[i]; }
  void set(std::size_t i, std::uint32_t v) { labels_[i] = v; }

  std::uint32_t component_count() const { return count_; }
  void set_component_count(std::uint32_t k) { count_ = k; }

  const std::vector<std::uint32_t>& labels() const { return labels_; }

private:
  GridDims dims_;
  std::vector<std::uint32_t> labels_;
  std::uint32_t count_ = 0;
};

// Comparator for distance predicates: d(x, [[F]]) against a bound.
enum class DistCmp { Lt, Leq, Geq, Gt };

struct DistInterval {
  DistCmp cmp = DistCmp::Leq;
  double bound = 0.0;  // must be >= 0
};

// Closure operator of the quasi-discrete space: b plus every voxel with a
// true neighbour. Satisfies C(empty)=empty, Y subset C(Y), C(A|B)=C(A)|C(B).
BoolImage closure(const BoolImage& b, Adjacency adj);

// Dual of closure: !closure(!b); voxels all of whose neighbours are true.
BoolImage interior(const BoolImage& b, Adjacency adj);

LabelImage connected_components(const BoolImage& b, Adjacency adj);

// Forward reachability: true at x iff some path x = p0, ..., pl has
// pl in `target` and every strictly intermediate pj in `through`.
// Paths of length 0 and 1 impose no constraint on `through`, so the
// result always contains closure(target). Computed as
// closure(target) | closure(Z), Z = union of components of `through`
// meeting closure(target).
BoolImage may_reach_fwd(const BoolImage& target, const BoolImage& through,
                        Adjacency adj);

// Backward variant; identical to the forward one because the adjacency
// relation is symmetric.
BoolImage may_reach_bwd(const BoolImage& source, const BoolImage& through,
                        Adjacency adj);

// f1-points from which every path leaving f1|f2 first crosses f2:
// f1 & !mayReach(!(f1|f2))[!f2].
BoolImage surrounded(const BoolImage& f1, const BoolImage& f2, Adjacency adj);

// f1-points lying on an f1-path that reaches f2:  f1 & mayReach(f2)[f1].
BoolImage touch_op(const BoolImage& f1, const BoolImage& f2, Adjacency adj);

// f1 extended with f2-regions attached to it:  f1 | touch(f2, f1).
BoolImage grow_op(const BoolImage& f1, const BoolImage& f2, Adjacency adj);

// Exact city-block distance to the nearest true voxel, in voxel units.
// 0 on true voxels; +infinity everywhere when b is all-false.
ScalarImage distance_transform(const BoolImage& b);

// d(x, b) compared against iv. +infinity compares greater than any finite
// bound. Throws on a negative bound.
BoolImage dist_predicate(const BoolImage& b, DistInterval iv);

// Distance-based filter d<r(d>=r(!b)): removes contiguous areas of b
// with diameter below 2r and rounds off thin protrusions.
BoolImage smoothen_op(double r, const BoolImage& b);

// Union of all connected components attaining the maximum voxel count
// (ties keep every maximal component). Empty input gives empty output.
BoolImage maxvol(const BoolImage& b, Adjacency adj);

}  // namespace imgql
