#include "multitile/region.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace multitile {

namespace {

std::strong_ordering order(const Rat& a, const Rat& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rat cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rat twice_area(const std::vector<Point2>& v) {
  Rat s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

void drop_repeats(std::vector<Point2>& v) {
  std::vector<Point2> out;
  for (const auto& p : v)
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  v = std::move(out);
}

void drop_collinear(std::vector<Point2>& v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const Point2& prev = v[(i + v.size() - 1) % v.size()];
      const Point2& next = v[(i + 1) % v.size()];
      if (sgn(cross(prev, v[i], next)) == 0) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
}

int sign_changes(const std::vector<int>& signs) {
  std::vector<int> nz;
  for (int s : signs)
    if (s != 0) nz.push_back(s);
  int changes = 0;
  for (std::size_t i = 0; i < nz.size(); ++i)
    if (nz[i] != nz[(i + 1) % nz.size()]) ++changes;
  return changes;
}

struct CellBox {
  Rat xlo, xhi, ylo, yhi;
};

CellBox cell_box(const ConvexCell& c) {
  if (c.dim() == 1) return {c.lo(), c.hi(), 0, 0};
  const auto& v = c.vertices();
  CellBox b{v[0].x, v[0].x, v[0].y, v[0].y};
  for (const auto& p : v) {
    if (p.x < b.xlo) b.xlo = p.x;
    if (p.x > b.xhi) b.xhi = p.x;
    if (p.y < b.ylo) b.ylo = p.y;
    if (p.y > b.yhi) b.yhi = p.y;
  }
  return b;
}

bool boxes_overlap(const CellBox& a, const CellBox& b, std::size_t dim) {
  if (a.xhi <= b.xlo || b.xhi <= a.xlo) return false;
  if (dim == 2 && (a.yhi <= b.ylo || b.yhi <= a.ylo)) return false;
  return true;
}

// Positive-area polygon from a clip result, or nothing.
std::optional<ConvexCell> cell_if_positive(std::vector<Point2> v) {
  drop_repeats(v);
  if (v.size() < 3 || sgn(twice_area(v)) == 0) return std::nullopt;
  return ConvexCell::polygon(std::move(v));
}

// Keeps the part of a convex polygon on the left of p->q (keep_left) or on
// the right.
std::vector<Point2> clip(const std::vector<Point2>& poly, const Point2& p, const Point2& q, bool keep_left) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  std::vector<Rat> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = cross(p, q, poly[i]);
    if (!keep_left) d[i] = -d[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const int si = sgn(d[i]);
    const int sj = sgn(d[j]);
    if (si >= 0) out.push_back(poly[i]);
    if ((si > 0 && sj < 0) || (si < 0 && sj > 0)) {
      const Rat t = d[i] / (d[i] - d[j]);
      out.push_back({poly[i].x + (poly[j].x - poly[i].x) * t, poly[i].y + (poly[j].y - poly[i].y) * t});
    }
  }
  return out;
}

std::optional<ConvexCell> intersect_cells(const ConvexCell& a, const ConvexCell& b) {
  if (a.dim() == 1) {
    const Rat& lo = a.lo() < b.lo() ? b.lo() : a.lo();
    const Rat& hi = a.hi() < b.hi() ? a.hi() : b.hi();
    if (lo < hi) return ConvexCell::interval(lo, hi);
    return std::nullopt;
  }
  if (!boxes_overlap(cell_box(a), cell_box(b), 2)) return std::nullopt;
  std::vector<Point2> cur = a.vertices();
  const auto& w = b.vertices();
  for (std::size_t i = 0; i < w.size() && cur.size() >= 3; ++i) cur = clip(cur, w[i], w[(i + 1) % w.size()], true);
  return cell_if_positive(std::move(cur));
}

std::vector<ConvexCell> subtract_cells(const ConvexCell& a, const ConvexCell& b) {
  std::vector<ConvexCell> out;
  if (a.dim() == 1) {
    if (b.hi() <= a.lo() || a.hi() <= b.lo()) return {a};
    if (a.lo() < b.lo()) out.push_back(ConvexCell::interval(a.lo(), b.lo()));
    if (b.hi() < a.hi()) out.push_back(ConvexCell::interval(b.hi(), a.hi()));
    return out;
  }
  if (!boxes_overlap(cell_box(a), cell_box(b), 2)) return {a};
  std::vector<Point2> cur = a.vertices();
  const auto& w = b.vertices();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Point2& p = w[i];
    const Point2& q = w[(i + 1) % w.size()];
    if (auto piece = cell_if_positive(clip(cur, p, q, false))) out.push_back(std::move(*piece));
    cur = clip(cur, p, q, true);
    drop_repeats(cur);
    if (cur.size() < 3 || sgn(twice_area(cur)) == 0) break;
  }
  return out;
}

// ---- canonical form -------------------------------------------------------

std::vector<ConvexCell> canonical_intervals(std::vector<ConvexCell> cells) {
  std::sort(cells.begin(), cells.end());
  std::vector<ConvexCell> out;
  for (auto& c : cells) {
    if (!out.empty() && c.lo() <= out.back().hi()) {
      if (c.hi() > out.back().hi()) out.back() = ConvexCell::interval(out.back().lo(), c.hi());
    } else {
      out.push_back(std::move(c));
    }
  }
  return out;
}

struct Line {
  Rat slope;
  Rat intercept;
  Rat at(const Rat& x) const { return slope * x + intercept; }
  friend bool operator==(const Line&, const Line&) = default;
};

Line line_through(const Point2& p, const Point2& q) {
  Rat slope = (q.y - p.y) / (q.x - p.x);
  return {slope, p.y - slope * p.x};
}

struct Trapezoid {
  Rat x0, x1;
  Line lower, upper;
};

// Bounding lines of a convex cell over a slab containing no vertex in its
// interior. Counterclockwise order walks the lower chain left to right.
std::optional<Trapezoid> slab_piece(const ConvexCell& c, const Rat& x0, const Rat& x1) {
  const auto& v = c.vertices();
  std::optional<Line> lower, upper;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    if (p.x < q.x && p.x <= x0 && q.x >= x1) lower = line_through(p, q);
    if (p.x > q.x && q.x <= x0 && p.x >= x1) upper = line_through(q, p);
  }
  if (!lower || !upper) return std::nullopt;
  return Trapezoid{x0, x1, *lower, *upper};
}

ConvexCell trapezoid_cell(const Trapezoid& t) {
  std::vector<Point2> v{{t.x0, t.lower.at(t.x0)}, {t.x1, t.lower.at(t.x1)}, {t.x1, t.upper.at(t.x1)}, {t.x0, t.upper.at(t.x0)}};
  drop_repeats(v);
  return ConvexCell::polygon(std::move(v));
}

std::vector<ConvexCell> canonical_trapezoids(const std::vector<ConvexCell>& cells) {
  std::vector<Rat> xs;
  std::vector<CellBox> boxes;
  boxes.reserve(cells.size());
  for (const auto& c : cells) {
    boxes.push_back(cell_box(c));
    for (const auto& p : c.vertices()) xs.push_back(p.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<ConvexCell> out;
  std::vector<Trapezoid> open;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const Rat& x0 = xs[s];
    const Rat& x1 = xs[s + 1];
    const Rat mid = (x0 + x1) / 2;

    std::vector<Trapezoid> slab;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (boxes[i].xlo > x0 || boxes[i].xhi < x1) continue;
      if (auto t = slab_piece(cells[i], x0, x1)) slab.push_back(std::move(*t));
    }
    std::sort(slab.begin(), slab.end(), [&](const Trapezoid& a, const Trapezoid& b) { return a.lower.at(mid) < b.lower.at(mid); });

    std::vector<Trapezoid> merged;
    for (auto& t : slab) {
      if (!merged.empty() && merged.back().upper == t.lower) {
        merged.back().upper = t.upper;
      } else {
        merged.push_back(std::move(t));
      }
    }

    std::vector<Trapezoid> next_open;
    for (auto& t : merged) {
      auto it = std::find_if(open.begin(), open.end(), [&](const Trapezoid& o) {
        return o.x1 == t.x0 && o.lower == t.lower && o.upper == t.upper;
      });
      if (it != open.end()) {
        t.x0 = it->x0;
        open.erase(it);
      }
      next_open.push_back(std::move(t));
    }
    for (const auto& o : open) out.push_back(trapezoid_cell(o));
    open = std::move(next_open);
  }
  for (const auto& o : open) out.push_back(trapezoid_cell(o));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::strong_ordering operator<=>(const Point2& a, const Point2& b) {
  if (auto c = order(a.x, b.x); c != 0) return c;
  return order(a.y, b.y);
}

ConvexCell ConvexCell::interval(Rat lo, Rat hi) {
  if (!(lo < hi)) throw GeometryError("interval must have lo < hi");
  ConvexCell c;
  c.dim_ = 1;
  c.lo_ = std::move(lo);
  c.hi_ = std::move(hi);
  return c;
}

ConvexCell ConvexCell::polygon(std::vector<Point2> v) {
  drop_repeats(v);
  if (v.size() < 3) throw GeometryError("polygon needs at least 3 distinct vertices");
  const int orientation = sgn(twice_area(v));
  if (orientation == 0) throw GeometryError("polygon has zero area");
  if (orientation < 0) std::reverse(v.begin(), v.end());
  drop_collinear(v);
  if (v.size() < 3) throw GeometryError("polygon has zero area");
  std::vector<int> dx, dy;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& prev = v[(i + v.size() - 1) % v.size()];
    const Point2& next = v[(i + 1) % v.size()];
    if (sgn(cross(prev, v[i], next)) <= 0) throw GeometryError("polygon is not convex");
    dx.push_back(sgn(next.x - v[i].x));
    dy.push_back(sgn(next.y - v[i].y));
  }
  if (sign_changes(dx) > 2 || sign_changes(dy) > 2) throw GeometryError("polygon is self-intersecting");
  std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
  ConvexCell c;
  c.dim_ = 2;
  c.vertices_ = std::move(v);
  return c;
}

Rat ConvexCell::measure() const {
  if (dim_ == 1) return hi_ - lo_;
  return twice_area(vertices_) / 2;
}

ConvexCell ConvexCell::shifted(const Rat& dx, const Rat& dy) const {
  ConvexCell c = *this;
  if (dim_ == 1) {
    c.lo_ += dx;
    c.hi_ += dx;
  } else {
    for (auto& p : c.vertices_) {
      p.x += dx;
      p.y += dy;
    }
  }
  return c;
}

std::strong_ordering operator<=>(const ConvexCell& a, const ConvexCell& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  if (a.dim_ == 1) {
    if (auto c = order(a.lo_, b.lo_); c != 0) return c;
    return order(a.hi_, b.hi_);
  }
  return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(), b.vertices_.end());
}

Region Region::from_cells(std::size_t dim, std::vector<ConvexCell> cells) {
  if (dim != 1 && dim != 2) throw GeometryError("region dimension must be 1 or 2");
  for (const auto& c : cells)
    if (c.dim() != dim) throw GeometryError("cell dimension mismatch");
  Region r(dim);
  r.cells_ = dim == 1 ? canonical_intervals(std::move(cells)) : canonical_trapezoids(cells);
  for (const auto& c : r.cells_) r.measure_ += c.measure();
  return r;
}

Region Region::interval(Rat lo, Rat hi) { return from_cells(1, {ConvexCell::interval(std::move(lo), std::move(hi))}); }

Region Region::polygon(std::vector<Point2> vertices) { return from_cells(2, {ConvexCell::polygon(std::move(vertices))}); }

std::strong_ordering operator<=>(const Region& a, const Region& b) {
  if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end());
}

AffineMap::AffineMap(std::size_t dim, std::vector<Rat> matrix, std::vector<Rat> offset)
    : n_(dim), m_(std::move(matrix)), t_(std::move(offset)) {
  if (m_.size() != n_ * n_ || t_.size() != n_) throw GeometryError("affine map shape mismatch");
}

AffineMap AffineMap::linear(const IntMatrix& b) {
  std::vector<Rat> m;
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m.emplace_back(b.at(i, j));
  return AffineMap(b.dim(), std::move(m), std::vector<Rat>(b.dim(), Rat(0)));
}

AffineMap AffineMap::inverse_linear(const IntMatrix& b) {
  const Int d = multitile::det(b);
  if (d == 0) throw InvalidMatrix("matrix is singular");
  std::vector<Rat> m;
  if (b.dim() == 1) {
    m.push_back(make_rat(1, d));
  } else {
    m = {make_rat(b.at(1, 1), d), make_rat(-b.at(0, 1), d), make_rat(-b.at(1, 0), d), make_rat(b.at(0, 0), d)};
  }
  return AffineMap(b.dim(), std::move(m), std::vector<Rat>(b.dim(), Rat(0)));
}

AffineMap AffineMap::translation(const LatticePoint& l) {
  const std::size_t n = l.dim();
  std::vector<Rat> m(n * n, Rat(0));
  std::vector<Rat> t;
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = 1;
    t.emplace_back(l[i]);
  }
  return AffineMap(n, std::move(m), std::move(t));
}

Rat AffineMap::det() const {
  if (n_ == 1) return m_[0];
  return m_[0] * m_[3] - m_[1] * m_[2];
}

Point2 AffineMap::apply2(const Point2& p) const {
  return {m_[0] * p.x + m_[1] * p.y + t_[0], m_[2] * p.x + m_[3] * p.y + t_[1]};
}

Rat measure(const Region& r) { return r.measure(); }

Region image(const Region& r, const AffineMap& map) {
  if (map.dim() != r.dim()) throw GeometryError("map and region dimensions differ");
  if (sgn(map.det()) == 0) throw InvalidMatrix("affine map is singular");
  std::vector<ConvexCell> cells;
  cells.reserve(r.cells().size());
  for (const auto& c : r.cells()) {
    if (r.dim() == 1) {
      Rat a = map.apply1(c.lo());
      Rat b = map.apply1(c.hi());
      if (b < a) std::swap(a, b);
      cells.push_back(ConvexCell::interval(std::move(a), std::move(b)));
    } else {
      std::vector<Point2> v;
      v.reserve(c.vertices().size());
      for (const auto& p : c.vertices()) v.push_back(map.apply2(p));
      cells.push_back(ConvexCell::polygon(std::move(v)));
    }
  }
  return Region::from_cells(r.dim(), std::move(cells));
}

Region translate(const Region& r, const LatticePoint& l) {
  if (l.dim() != r.dim()) throw GeometryError("translation dimension mismatch");
  if (l.is_zero()) return r;
  const Rat dx(l[0]);
  const Rat dy = r.dim() == 2 ? Rat(l[1]) : Rat(0);
  Region out(r.dim());
  out.cells_.reserve(r.cells_.size());
  for (const auto& c : r.cells_) out.cells_.push_back(c.shifted(dx, dy));
  out.measure_ = r.measure_;
  return out;
}

Region affine_image(const Region& r, const IntMatrix& b, unsigned k, const LatticePoint& l) {
  if (det(b) == 0) throw InvalidMatrix("matrix is singular");
  if (k == 0) return translate(r, l);
  const IntMatrix bk = b.pow(k);
  AffineMap map = AffineMap::linear(bk);
  std::vector<Rat> m;
  for (std::size_t i = 0; i < bk.dim(); ++i)
    for (std::size_t j = 0; j < bk.dim(); ++j) m.emplace_back(bk.at(i, j));
  std::vector<Rat> t;
  for (std::size_t i = 0; i < l.dim(); ++i) t.emplace_back(l[i]);
  return image(r, AffineMap(bk.dim(), std::move(m), std::move(t)));
}

Region intersect(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) throw GeometryError("dimension mismatch");
  std::vector<ConvexCell> cells;
  for (const auto& ca : a.cells())
    for (const auto& cb : b.cells())
      if (auto c = intersect_cells(ca, cb)) cells.push_back(std::move(*c));
  return Region::from_cells(a.dim(), std::move(cells));
}

Region subtract(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) throw GeometryError("dimension mismatch");
  std::vector<ConvexCell> frags = a.cells();
  for (const auto& cb : b.cells()) {
    std::vector<ConvexCell> next;
    for (const auto& f : frags) {
      auto pieces = subtract_cells(f, cb);
      next.insert(next.end(), std::make_move_iterator(pieces.begin()), std::make_move_iterator(pieces.end()));
    }
    frags = std::move(next);
    if (frags.empty()) break;
  }
  return Region::from_cells(a.dim(), std::move(frags));
}

Region unite(const Region& a, const Region& b) {
  if (a.dim() != b.dim()) throw GeometryError("dimension mismatch");
  std::vector<ConvexCell> cells = a.cells();
  const Region rest = subtract(b, a);
  cells.insert(cells.end(), rest.cells().begin(), rest.cells().end());
  return Region::from_cells(a.dim(), std::move(cells));
}

Region disjoint_union(std::span<const Region> parts) {
  if (parts.empty()) return Region(1);
  std::vector<ConvexCell> cells;
  for (const auto& p : parts) {
    if (p.dim() != parts.front().dim()) throw GeometryError("dimension mismatch");
    cells.insert(cells.end(), p.cells().begin(), p.cells().end());
  }
  return Region::from_cells(parts.front().dim(), std::move(cells));
}

bool essentially_equal(const Region& a, const Region& b) {
  return sgn(subtract(a, b).measure()) == 0 && sgn(subtract(b, a).measure()) == 0;
}

bool essentially_contains(const Region& outer, const Region& inner) { return sgn(subtract(inner, outer).measure()) == 0; }

Rat overlap_measure(const Region& a, const Region& b) { return intersect(a, b).measure(); }

Box bounding_box(const Region& r) {
  if (r.empty()) throw GeometryError("bounding box of an empty region");
  CellBox b = cell_box(r.cells().front());
  for (const auto& c : r.cells()) {
    CellBox cb = cell_box(c);
    if (cb.xlo < b.xlo) b.xlo = cb.xlo;
    if (cb.xhi > b.xhi) b.xhi = cb.xhi;
    if (cb.ylo < b.ylo) b.ylo = cb.ylo;
    if (cb.yhi > b.yhi) b.yhi = cb.yhi;
  }
  if (r.dim() == 1) return {{b.xlo}, {b.xhi}};
  return {{b.xlo, b.ylo}, {b.xhi, b.yhi}};
}

std::vector<LatticePoint> candidate_shifts(const Box& fixed, const Box& moving) {
  const std::size_t n = fixed.lo.size();
  std::vector<Int> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = ceil_rat(fixed.lo[i] - moving.hi[i]);
    hi[i] = floor_rat(fixed.hi[i] - moving.lo[i]);
  }
  std::vector<LatticePoint> out;
  if (n == 1) {
    for (Int a = lo[0]; a <= hi[0]; ++a) out.emplace_back(std::vector<Int>{a});
  } else {
    for (Int a = lo[0]; a <= hi[0]; ++a)
      for (Int b = lo[1]; b <= hi[1]; ++b) out.emplace_back(std::vector<Int>{a, b});
  }
  return out;
}

}  // namespace multitile
