#include <doctest.h>

#include <stdexcept>

#include <limits>

#include "imgql/spatial.hpp"
#include "oracle.hpp"

using namespace imgql;

namespace {

const Adjacency kBoth[] = {Adjacency::Orthogonal, Adjacency::Orthodiagonal};

BoolImage single(GridDims d, int x, int y) {
  BoolImage b(d);
  b.set(x, y, true);
  return b;
}

}  // namespace

TEST_CASE("closure axioms") {
  const GridDims d(8, 6);
  for (Adjacency adj : kBoth) {
    CHECK(volume(closure(BoolImage(d), adj)) == 0);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const BoolImage a = oracle::random_image(d, seed, 0.3);
      const BoolImage b = oracle::random_image(d, seed + 1000, 0.3);
      CHECK((a & closure(a, adj)) == a);  // a subset of C(a)
      CHECK(closure(a | b, adj) == (closure(a, adj) | closure(b, adj)));
    }
  }
}

TEST_CASE("closure of a single voxel") {
  const GridDims d(3, 3);
  const BoolImage c = single(d, 1, 1);
  CHECK(volume(closure(c, Adjacency::Orthodiagonal)) == 9);
  CHECK(volume(closure(c, Adjacency::Orthogonal)) == 5);
}

TEST_CASE("interior duality and examples") {
  const GridDims d(7, 7);
  for (Adjacency adj : kBoth) {
    CHECK(interior(BoolImage(d, true), adj) == BoolImage(d, true));
    CHECK(volume(interior(single(d, 3, 3), adj)) == 0);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const BoolImage b = oracle::random_image(d, seed, 0.5);
      CHECK(interior(b, adj) == !closure(!b, adj));
    }
  }
}

TEST_CASE("connected components labelling order and adjacency") {
  const GridDims d(6, 4);
  CHECK(connected_components(BoolImage(d), Adjacency::Orthogonal).component_count() == 0);

  BoolImage two_blocks(d);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      two_blocks.set(x, y, true);
      two_blocks.set(x + 4, y + 2, true);
    }
  }
  const LabelImage l = connected_components(two_blocks, Adjacency::Orthodiagonal);
  CHECK(l.component_count() == 2);
  CHECK(l(0, 0) == 1);  // row-major first encounter gets label 1
  CHECK(l(4, 2) == 2);

  BoolImage diagonal(d);
  diagonal.set(1, 1, true);
  diagonal.set(2, 2, true);
  CHECK(connected_components(diagonal, Adjacency::Orthodiagonal).component_count() == 1);
  CHECK(connected_components(diagonal, Adjacency::Orthogonal).component_count() == 2);
}

TEST_CASE("mayReach against the path-semantics oracle") {
  for (Adjacency adj : kBoth) {
    for (int w = 1; w <= 6; ++w) {
      for (int h = 1; h <= 6; h += 2) {
        const GridDims d(w, h);
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
          const BoolImage target = oracle::random_image(d, seed * 31 + w, 0.25);
          const BoolImage through = oracle::random_image(d, seed * 37 + h, 0.5);
          CHECK(may_reach_fwd(target, through, adj) ==
                oracle::may_reach(target, through, adj));
        }
      }
    }
  }
}

TEST_CASE("mayReach basic shapes") {
  const GridDims d(5, 1);
  BoolImage target(d), through(d);
  target.set(4, 0, true);
  through.set(2, 0, true);
  // Only the closure of the target is reachable: column 2's component
  // never touches it.
  const BoolImage r = may_reach_fwd(target, through, Adjacency::Orthogonal);
  CHECK(r(3, 0));
  CHECK(r(4, 0));
  CHECK_FALSE(r(1, 0));
  CHECK_FALSE(r(2, 0));

  for (Adjacency adj : kBoth) {
    const GridDims g(6, 5);
    const BoolImage t = oracle::random_image(g, 5, 0.3);
    CHECK(may_reach_fwd(t, BoolImage(g), adj) == closure(t, adj));
    if (volume(t) > 0) {
      CHECK(volume(may_reach_fwd(t, BoolImage(g, true), adj)) == g.size());
    }
    CHECK(volume(may_reach_fwd(BoolImage(g), oracle::random_image(g, 6, 0.5), adj)) == 0);
  }
}

TEST_CASE("mayReach backward equals forward under symmetric adjacency") {
  const GridDims d(6, 6);
  for (Adjacency adj : kBoth) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const BoolImage a = oracle::random_image(d, seed, 0.3);
      const BoolImage b = oracle::random_image(d, seed + 500, 0.5);
      CHECK(may_reach_bwd(a, b, adj) == may_reach_fwd(a, b, adj));
    }
    // N F as reachability with a false `through`.
    const BoolImage f = oracle::random_image(d, 77, 0.3);
    CHECK(may_reach_bwd(f, BoolImage(d), adj) == closure(f, adj));
  }
}

TEST_CASE("surrounded, touch, grow against the oracle") {
  for (Adjacency adj : kBoth) {
    for (int w = 2; w <= 6; w += 2) {
      for (int h = 2; h <= 6; h += 2) {
        const GridDims d(w, h);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          const BoolImage f1 = oracle::random_image(d, seed * 13 + w * 7, 0.4);
          const BoolImage f2 = oracle::random_image(d, seed * 17 + h * 3, 0.4);
          CHECK(surrounded(f1, f2, adj) == oracle::surrounded(f1, f2, adj));
          CHECK(touch_op(f1, f2, adj) == oracle::touch(f1, f2, adj));
          CHECK(grow_op(f1, f2, adj) == oracle::grow(f1, f2, adj));
        }
      }
    }
  }
}

TEST_CASE("surrounded edge laws") {
  const GridDims d(6, 5);
  for (Adjacency adj : kBoth) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const BoolImage f = oracle::random_image(d, seed, 0.4);
      CHECK(surrounded(f, BoolImage(d, true), adj) == f);
      // On a connected grid, a set with any false voxel cannot be
      // surrounded by nothing.
      if (volume(f) < d.size()) {
        CHECK(volume(surrounded(f, BoolImage(d), adj)) == 0);
      }
    }
  }
}

TEST_CASE("touch and grow edge laws") {
  const GridDims d(6, 6);
  for (Adjacency adj : kBoth) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const BoolImage f = oracle::random_image(d, seed + 3, 0.4);
      CHECK(touch_op(f, f, adj) == f);
      CHECK(volume(touch_op(f, BoolImage(d), adj)) == 0);
      CHECK(grow_op(f, BoolImage(d), adj) == f);
    }
  }
}

TEST_CASE("grow attaches only touching blobs") {
  const GridDims d(9, 3);
  BoolImage hyper(d), very(d);
  hyper.set(1, 1, true);
  very.set(2, 1, true);   // adjacent to hyper
  very.set(7, 1, true);   // separated
  const BoolImage g = grow_op(hyper, very, Adjacency::Orthogonal);
  CHECK(g(1, 1));
  CHECK(g(2, 1));
  CHECK_FALSE(g(7, 1));
}

TEST_CASE("distance transform") {
  const double inf = std::numeric_limits<double>::infinity();
  const GridDims d(8, 7);

  const ScalarImage empty = distance_transform(BoolImage(d));
  for (double v : empty.values()) CHECK(v == inf);

  const ScalarImage one = distance_transform(single(d, 0, 0));
  CHECK(one(3, 4) == 7);  // |3| + |4|
  CHECK(one(0, 0) == 0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BoolImage b = oracle::random_image(d, seed, 0.2);
    const ScalarImage got = distance_transform(b);
    const ScalarImage want = oracle::distance(b);
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got.at(i) == want.at(i));
      if (b.at(i)) CHECK(got.at(i) == 0);
    }
  }
}

TEST_CASE("distance monotonicity in the set") {
  const GridDims d(7, 7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BoolImage a = oracle::random_image(d, seed, 0.15);
    const BoolImage b = a | oracle::random_image(d, seed + 100, 0.15);
    const ScalarImage da = distance_transform(a);
    const ScalarImage db = distance_transform(b);
    for (std::size_t i = 0; i < da.size(); ++i) CHECK(da.at(i) >= db.at(i));
  }
}

TEST_CASE("closure and reachability are monotone in the set") {
  const GridDims d(7, 6);
  for (Adjacency adj : kBoth) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const BoolImage a = oracle::random_image(d, seed, 0.2);
      const BoolImage b = a | oracle::random_image(d, seed + 50, 0.2);
      const BoolImage t = oracle::random_image(d, seed + 99, 0.3);
      CHECK(volume(closure(a, adj) & !closure(b, adj)) == 0);
      CHECK(volume(may_reach_fwd(a, t, adj) & !may_reach_fwd(b, t, adj)) == 0);
    }
  }
}

TEST_CASE("distance predicates") {
  const GridDims d(9, 9);
  const BoolImage b = oracle::random_image(d, 42, 0.2);
  CHECK(dist_predicate(b, {DistCmp::Leq, 0.0}) == b);
  CHECK(volume(dist_predicate(BoolImage(d), {DistCmp::Geq, 1e9})) == d.size());
  CHECK(dist_predicate(b, {DistCmp::Lt, 3.0}) == !dist_predicate(b, {DistCmp::Geq, 3.0}));
  CHECK_THROWS_AS(dist_predicate(b, {DistCmp::Leq, -1.0}), std::invalid_argument);
}

TEST_CASE("smoothen removes thin features, keeps thick ones") {
  CHECK(volume(smoothen_op(2.0, BoolImage(GridDims(10, 10), true))) == 100);
  CHECK(volume(smoothen_op(2.0, BoolImage(GridDims(10, 10)))) == 0);
  // r = 0 follows the defining formula into the empty set.
  CHECK(volume(smoothen_op(0.0, BoolImage(GridDims(5, 5), true))) == 0);

  // Disk of radius 10 with a 1-voxel protrusion of length 10.
  const GridDims d(40, 40);
  BoolImage shape(d);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      const double dx = x - 16, dy = y - 20;
      if (dx * dx + dy * dy <= 100.0) shape.set(x, y, true);
    }
  }
  for (int x = 26; x < 36; ++x) shape.set(x, 20, true);

  const BoolImage smoothed = smoothen_op(3.0, shape);
  CHECK(volume(smoothed) > 0);
  CHECK_FALSE(smoothed(33, 20));            // protrusion gone
  CHECK(smoothed(16, 20));                  // disk body kept
  CHECK(volume(smoothed & !shape) == 0);    // no new voxels appear

  // An isolated blob thinner than 2r vanishes entirely.
  BoolImage thin(d);
  for (int y = 10; y < 14; ++y) {
    for (int x = 5; x < 30; ++x) thin.set(x, y, true);
  }
  CHECK(volume(smoothen_op(3.0, thin)) == 0);
}

TEST_CASE("maxvol keeps largest components, ties included") {
  const GridDims d(10, 3);
  BoolImage b(d);
  for (int x = 0; x < 3; ++x) b.set(x, 0, true);       // size 3
  for (int x = 5; x < 10; ++x) b.set(x, 2, true);      // size 5
  const BoolImage m = maxvol(b, Adjacency::Orthodiagonal);
  CHECK(volume(m) == 5);
  CHECK(m(5, 2));
  CHECK_FALSE(m(0, 0));

  BoolImage tie(d);
  for (int x = 0; x < 4; ++x) tie.set(x, 0, true);
  for (int x = 6; x < 10; ++x) tie.set(x, 2, true);
  CHECK(volume(maxvol(tie, Adjacency::Orthodiagonal)) == 8);

  CHECK(volume(maxvol(BoolImage(d), Adjacency::Orthogonal)) == 0);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const BoolImage r = oracle::random_image(GridDims(8, 8), seed, 0.35);
    const BoolImage m2 = maxvol(r, Adjacency::Orthogonal);
    CHECK(volume(m2 & !r) == 0);  // maxvol(b) subset of b
  }
}
