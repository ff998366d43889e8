#include "imgql/spatial.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace imgql {

BoolImage closure(const BoolImage& b, Adjacency adj) {
  const GridDims d = b.dims();
  BoolImage out = b;
  const auto offs = neighbour_offsets(adj);
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      if (b(x, y)) continue;
      for (int k = 0; k < offs.count; ++k) {
        const int nx = x + offs.dxdy[k][0];
        const int ny = y + offs.dxdy[k][1];
        if (d.contains(nx, ny) && b(nx, ny)) {
          out.set(x, y, true);
          break;
        }
      }
    }
  }
  return out;
}

BoolImage interior(const BoolImage& b, Adjacency adj) {
  return !closure(!b, adj);
}

LabelImage connected_components(const BoolImage& b, Adjacency adj) {
  const GridDims d = b.dims();
  LabelImage out(d);
  const auto offs = neighbour_offsets(adj);
  std::uint32_t next = 0;
  std::vector<std::size_t> stack;
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      const std::size_t seed = d.index(x, y);
      if (!b.at(seed) || out.at(seed) != 0) continue;
      ++next;
      out.set(seed, next);
      stack.push_back(seed);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const int cx = static_cast<int>(cur % d.width);
        const int cy = static_cast<int>(cur / d.width);
        for (int k = 0; k < offs.count; ++k) {
          const int nx = cx + offs.dxdy[k][0];
          const int ny = cy + offs.dxdy[k][1];
          if (!d.contains(nx, ny)) continue;
          const std::size_t ni = d.index(nx, ny);
          if (b.at(ni) && out.at(ni) == 0) {
            out.set(ni, next);
            stack.push_back(ni);
          }
        }
      }
    }
  }
  out.set_component_count(next);
  return out;
}

BoolImage may_reach_fwd(const BoolImage& target, const BoolImage& through,
                        Adjacency adj) {
  require_same_dims(target.dims(), through.dims(), "mayReach");
  const BoolImage near_target = closure(target, adj);

  const LabelImage comps = connected_components(through, adj);
  if (comps.component_count() == 0) return near_target;

  // Components of `through` that meet closure(target) admit longer paths.
  std::vector<std::uint8_t> keep(comps.component_count() + 1, 0);
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (near_target.at(i) && comps.at(i) != 0) keep[comps.at(i)] = 1;
  }

  BoolImage z(target.dims());
  bool any = false;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (comps.at(i) != 0 && keep[comps.at(i)]) {
      z.set(i, true);
      any = true;
    }
  }
  if (!any) return near_target;
  return near_target | closure(z, adj);
}

BoolImage may_reach_bwd(const BoolImage& source, const BoolImage& through,
                        Adjacency adj) {
  return may_reach_fwd(source, through, adj);
}

BoolImage surrounded(const BoolImage& f1, const BoolImage& f2, Adjacency adj) {
  require_same_dims(f1.dims(), f2.dims(), "surrounded");
  return f1 & !may_reach_fwd(!(f1 | f2), !f2, adj);
}

BoolImage touch_op(const BoolImage& f1, const BoolImage& f2, Adjacency adj) {
  require_same_dims(f1.dims(), f2.dims(), "touch");
  return f1 & may_reach_fwd(f2, f1, adj);
}

BoolImage grow_op(const BoolImage& f1, const BoolImage& f2, Adjacency adj) {
  require_same_dims(f1.dims(), f2.dims(), "grow");
  return f1 | touch_op(f2, f1, adj);
}

ScalarImage distance_transform(const BoolImage& b) {
  const GridDims d = b.dims();
  const double inf = std::numeric_limits<double>::infinity();
  ScalarImage out(d, inf);
  // Two-pass chamfer scan; exact for the city-block metric, and
  // +inf propagates correctly through the +1 updates.
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      if (b(x, y)) {
        out.set(x, y, 0.0);
        continue;
      }
      double v = out(x, y);
      if (x > 0) v = std::min(v, out(x - 1, y) + 1.0);
      if (y > 0) v = std::min(v, out(x, y - 1) + 1.0);
      out.set(x, y, v);
    }
  }
  for (int y = d.height - 1; y >= 0; --y) {
    for (int x = d.width - 1; x >= 0; --x) {
      double v = out(x, y);
      if (x + 1 < d.width) v = std::min(v, out(x + 1, y) + 1.0);
      if (y + 1 < d.height) v = std::min(v, out(x, y + 1) + 1.0);
      out.set(x, y, v);
    }
  }
  return out;
}

BoolImage dist_predicate(const BoolImage& b, DistInterval iv) {
  if (iv.bound < 0.0) {
    throw std::invalid_argument("distance predicate bound must be >= 0, got " +
                                std::to_string(iv.bound));
  }
  const ScalarImage dt = distance_transform(b);
  BoolImage out(b.dims());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = dt.at(i);
    bool ok = false;
    switch (iv.cmp) {
      case DistCmp::Lt: ok = v < iv.bound; break;
      case DistCmp::Leq: ok = v <= iv.bound; break;
      case DistCmp::Geq: ok = v >= iv.bound; break;
      case DistCmp::Gt: ok = v > iv.bound; break;
    }
    out.set(i, ok);
  }
  return out;
}

BoolImage smoothen_op(double r, const BoolImage& b) {
  if (r < 0.0) {
    throw std::invalid_argument("smoothen radius must be >= 0, got " +
                                std::to_string(r));
  }
  const BoolImage core = dist_predicate(!b, {DistCmp::Geq, r});
  return dist_predicate(core, {DistCmp::Lt, r});
}

BoolImage maxvol(const BoolImage& b, Adjacency adj) {
  const LabelImage comps = connected_components(b, adj);
  BoolImage out(b.dims());
  if (comps.component_count() == 0) return out;

  std::vector<std::size_t> sizes(comps.component_count() + 1, 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (comps.at(i) != 0) ++sizes[comps.at(i)];
  }
  std::size_t best = 0;
  for (std::uint32_t l = 1; l < sizes.size(); ++l) best = std::max(best, sizes[l]);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::uint32_t l = comps.at(i);
    if (l != 0 && sizes[l] == best) out.set(i, true);
  }
  return out;
}

}  // namespace imgql
