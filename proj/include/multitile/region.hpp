#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "multitile/lattice.hpp"

namespace multitile {

struct Point2 {
  Rat x;
  Rat y;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend std::strong_ordering operator<=>(const Point2& a, const Point2& b);
};

/// Raised for cells that are degenerate, non-convex or otherwise malformed.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed interval [lo, hi] with lo < hi (dimension 1) or a strictly convex
/// polygon with positive area (dimension 2). Polygon vertices are stored
/// counterclockwise, starting at the lexicographically smallest vertex, with
/// no repeated or collinear-consecutive vertices.
class ConvexCell {
 public:
  static ConvexCell interval(Rat lo, Rat hi);
  /// Accepts either orientation; drops repeated and collinear vertices.
  static ConvexCell polygon(std::vector<Point2> vertices);

  std::size_t dim() const { return dim_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  const std::vector<Point2>& vertices() const { return vertices_; }

  Rat measure() const;
  /// Shifting preserves every stored invariant, so no renormalization.
  ConvexCell shifted(const Rat& dx, const Rat& dy) const;

  friend bool operator==(const ConvexCell&, const ConvexCell&) = default;
  friend std::strong_ordering operator<=>(const ConvexCell& a, const ConvexCell& b);

 private:
  ConvexCell() = default;

  std::size_t dim_ = 1;
  Rat lo_, hi_;
  std::vector<Point2> vertices_;
};

/// A finite union of essentially disjoint convex cells, always held in
/// canonical form. Equality of canonical forms is equality of point sets
/// modulo null sets:
///   dim 1: maximal intervals sorted by left endpoint;
///   dim 2: maximal vertical trapezoids (slabs cut only at true boundary
///          vertices, merged along shared bounding lines), sorted.
class Region {
 public:
  explicit Region(std::size_t dim = 1) : dim_(dim) {}

  /// Cells must be pairwise essentially disjoint (not checked here).
  static Region from_cells(std::size_t dim, std::vector<ConvexCell> cells);
  static Region interval(Rat lo, Rat hi);
  static Region polygon(std::vector<Point2> vertices);

  std::size_t dim() const { return dim_; }
  const std::vector<ConvexCell>& cells() const { return cells_; }
  const Rat& measure() const { return measure_; }
  bool empty() const { return cells_.empty(); }

  friend bool operator==(const Region& a, const Region& b) {
    return a.dim_ == b.dim_ && a.cells_ == b.cells_;
  }
  /// Lexicographic on canonical cell lists.
  friend std::strong_ordering operator<=>(const Region& a, const Region& b);
  /// The canonical form commutes with translations.
  friend Region translate(const Region& r, const LatticePoint& l);

 private:
  std::size_t dim_;
  std::vector<ConvexCell> cells_;
  Rat measure_ = 0;
};

/// x -> M x + t with rational M (n x n) and t.
class AffineMap {
 public:
  AffineMap(std::size_t dim, std::vector<Rat> matrix, std::vector<Rat> offset);

  static AffineMap linear(const IntMatrix& b);
  static AffineMap inverse_linear(const IntMatrix& b);
  static AffineMap translation(const LatticePoint& l);

  std::size_t dim() const { return n_; }
  Rat det() const;
  Rat apply1(const Rat& x) const { return m_[0] * x + t_[0]; }
  Point2 apply2(const Point2& p) const;

 private:
  std::size_t n_;
  std::vector<Rat> m_;
  std::vector<Rat> t_;
};

struct Box {
  std::vector<Rat> lo;
  std::vector<Rat> hi;
};

Rat measure(const Region& r);
Region image(const Region& r, const AffineMap& map);
Region translate(const Region& r, const LatticePoint& l);
/// B^k R + l.
Region affine_image(const Region& r, const IntMatrix& b, unsigned k, const LatticePoint& l);
Region intersect(const Region& a, const Region& b);
Region subtract(const Region& a, const Region& b);
/// General union; the operands may overlap.
Region unite(const Region& a, const Region& b);
/// Union of regions known to be pairwise essentially disjoint.
Region disjoint_union(std::span<const Region> parts);
bool essentially_equal(const Region& a, const Region& b);
/// inner is contained in outer up to a null set.
bool essentially_contains(const Region& outer, const Region& inner);
Rat overlap_measure(const Region& a, const Region& b);
/// Throws GeometryError on an empty region.
Box bounding_box(const Region& r);
/// Integer shifts l (lexicographic) for which moving + l can meet fixed in
/// positive measure, judged on boxes only.
std::vector<LatticePoint> candidate_shifts(const Box& fixed, const Box& moving);

}  // namespace multitile
