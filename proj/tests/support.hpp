#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// library's clipping code.

#include <algorithm>
#include <random>
#include <vector>

#include "multitile/region.hpp"

namespace multitile::testing {

inline Rat q(long n, long d = 1) { return make_rat(n, d); }

inline Rat random_rat(std::mt19937& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> num(lo * den, hi * den);
  return make_rat(num(rng), den);
}

inline Rat cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Andrew's monotone chain, strict (collinear points dropped), CCW.
inline std::vector<Point2> hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && sgn(cross(h[k - 2], h[k - 1], p)) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && sgn(cross(h[k - 2], h[k - 1], pts[i])) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline Rat polygon_area(const std::vector<Point2>& v) {
  Rat s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& r = v[(i + 1) % v.size()];
    s += p.x * r.y - r.x * p.y;
  }
  return abs(s) / 2;
}

/// Random convex polygon with positive area inside [lo, hi]^2.
inline std::vector<Point2> random_convex(std::mt19937& rng, long lo, long hi, long den, int points = 6) {
  for (;;) {
    std::vector<Point2> pts;
    for (int i = 0; i < points; ++i) pts.push_back({random_rat(rng, lo, hi, den), random_rat(rng, lo, hi, den)});
    auto h = hull(pts);
    if (h.size() >= 3 && sgn(polygon_area(h)) > 0) return h;
  }
}

/// Keeps the part of a convex polygon with side(p) * sign >= 0 where side
/// is the orientation relative to the line a->b.
inline std::vector<Point2> halfplane(const std::vector<Point2>& poly, const Point2& a, const Point2& b, int sign) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& r = poly[(i + 1) % poly.size()];
    const Rat dp = cross(a, b, p) * sign;
    const Rat dr = cross(a, b, r) * sign;
    if (sgn(dp) >= 0) out.push_back(p);
    if (sgn(dp) * sgn(dr) < 0) {
      const Rat t = dp / (dp - dr);
      out.push_back({p.x + (r.x - p.x) * t, p.y + (r.y - p.y) * t});
    }
  }
  return hull(out);
}

/// Re-presents a region by cutting cells along random chords (2-D) or at
/// random interior points (1-D). The point set is unchanged.
inline std::vector<ConvexCell> split_at_random_chords(const Region& r, std::mt19937& rng, int chords) {
  std::vector<ConvexCell> cells = r.cells();
  for (int c = 0; c < chords; ++c) {
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    const std::size_t idx = pick(rng);
    const ConvexCell cell = cells[idx];
    if (cell.dim() == 1) {
      std::uniform_int_distribution<long> t(1, 96);
      const Rat cut = cell.lo() + (cell.hi() - cell.lo()) * make_rat(t(rng), 97);
      cells[idx] = ConvexCell::interval(cell.lo(), cut);
      cells.push_back(ConvexCell::interval(cut, cell.hi()));
      continue;
    }
    // Chord between points on two distinct edges.
    const auto& v = cell.vertices();
    std::uniform_int_distribution<std::size_t> edge(0, v.size() - 1);
    std::uniform_int_distribution<long> t(1, 30);
    std::size_t e1 = edge(rng), e2 = edge(rng);
    if (e1 == e2) e2 = (e1 + 1 + edge(rng) % (v.size() - 1)) % v.size();
    auto on_edge = [&](std::size_t e) {
      const Point2& a = v[e];
      const Point2& b = v[(e + 1) % v.size()];
      const Rat s = make_rat(t(rng), 31);
      return Point2{a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
    };
    const Point2 p1 = on_edge(e1), p2 = on_edge(e2);
    auto left = halfplane(v, p1, p2, 1);
    auto right = halfplane(v, p1, p2, -1);
    if (left.size() < 3 || right.size() < 3) continue;
    cells[idx] = ConvexCell::polygon(left);
    cells.push_back(ConvexCell::polygon(right));
  }
  return cells;
}

}  // namespace multitile::testing
