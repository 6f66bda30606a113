#include "multitile/synthesizer.hpp"

#include <numeric>
#include <regex>

namespace multitile {

namespace {

Rat q(long num, long den = 1) { return make_rat(num, den); }

LatticePoint pt(long x) { return LatticePoint{x}; }
LatticePoint pt(long x, long y) { return LatticePoint{x, y}; }

Region negate(const Region& r) { return image(r, AffineMap(r.dim(), r.dim() == 1 ? std::vector<Rat>{-1} : std::vector<Rat>{-1, 0, 0, -1}, std::vector<Rat>(r.dim(), Rat(0)))); }

DigitMatrix digits_from(std::size_t m, std::size_t dim, const std::vector<std::tuple<std::size_t, std::size_t, std::vector<LatticePoint>>>& entries) {
  DigitMatrix d(m, dim, 1);
  for (const auto& [i, j, pts] : entries) d.at(i - 1, j - 1).insert(pts.begin(), pts.end());
  return d;
}

Region ex31_k() { return Region::interval(q(-3, 4), q(1, 4)); }

ExampleFixture ex31_4piece() {
  ExampleFixture f{"ex31_4piece", "K=[-3/4,1/4], B=2, four-prototile representation", ex31_k(), IntMatrix{{2}}, {}, {}, 2};
  f.atoms = {Region::interval(q(-3, 4), q(-1, 2)), Region::interval(q(-1, 2), q(-1, 4)), Region::interval(q(-1, 4), 0), Region::interval(0, q(1, 4))};
  f.digits = digits_from(4, 1,
                         {{1, 2, {pt(-1)}}, {1, 3, {pt(-1)}}, {2, 1, {pt(0)}}, {2, 4, {pt(-1)}}, {3, 2, {pt(0)}}, {3, 3, {pt(0)}}, {4, 1, {pt(1)}}, {4, 4, {pt(0)}}});
  return f;
}

ExampleFixture ex31_3piece() {
  ExampleFixture f{"ex31_3piece", "K=[-3/4,1/4], B=2, simplest form (three prototiles)", ex31_k(), IntMatrix{{2}}, {}, {}, 2};
  f.atoms = {Region::interval(q(-3, 4), q(-1, 2)), Region::interval(q(-1, 2), 0), Region::interval(0, q(1, 4))};
  f.digits = digits_from(3, 1, {{1, 2, {pt(-1)}}, {2, 1, {pt(0)}}, {2, 2, {pt(0)}}, {2, 3, {pt(-1)}}, {3, 1, {pt(1)}}, {3, 3, {pt(0)}}});
  return f;
}

ExampleFixture ex32_tile() {
  ExampleFixture f{"ex32_tile", "K=[-3/4,1/4], B=-3, self-affine tile", ex31_k(), IntMatrix{{-3}}, {ex31_k()}, {}, 1};
  f.digits = digits_from(1, 1, {{1, 1, {pt(0), pt(1), pt(2)}}});
  return f;
}

ExampleFixture ex32_2piece() {
  ExampleFixture f{"ex32_2piece", "K=[-3/4,1/4], B=-3, two-prototile representation", ex31_k(), IntMatrix{{-3}}, {}, {}, 1};
  f.atoms = {Region::interval(q(-3, 4), q(-1, 4)), Region::interval(q(-1, 4), q(1, 4))};
  f.digits = digits_from(2, 1, {{1, 1, {pt(2)}}, {1, 2, {pt(1), pt(2)}}, {2, 1, {pt(0), pt(1)}}, {2, 2, {pt(0)}}});
  return f;
}

struct Ex33Pieces {
  Region h, e, f, k_prime;
};

Ex33Pieces ex33_pieces() {
  return {Region::polygon({{q(1, 6), q(1, 2)}, {q(1, 2), q(1, 2)}, {q(2, 3), 1}, {q(1, 3), 1}}),
          Region::polygon({{0, 0}, {q(1, 3), 0}, {q(1, 2), q(1, 2)}, {q(1, 6), q(1, 2)}}),
          Region::polygon({{q(-1, 3), 0}, {0, 0}, {q(1, 6), q(1, 2)}, {q(-1, 6), q(1, 2)}}),
          Region::polygon({{q(-1, 2), q(-1, 2)}, {q(1, 6), q(-1, 2)}, {q(1, 2), q(1, 2)}, {q(-1, 6), q(1, 2)}})};
}

Region ex33_k() {
  const auto p = ex33_pieces();
  return disjoint_union(std::vector<Region>{p.h, negate(p.h), p.k_prime});
}

ExampleFixture ex33_6piece() {
  const auto p = ex33_pieces();
  ExampleFixture f{"ex33_6piece", "K=H u (-H) u K', B=[[-1,1],[-3,1]], six-prototile representation", ex33_k(), IntMatrix{{-1, 1}, {-3, 1}}, {}, {}, 2};
  f.atoms = {p.h, p.e, p.f, negate(p.e), negate(p.f), negate(p.h)};
  f.digits = digits_from(6, 2,
                         {{1, 1, {pt(0, -1)}},
                          {1, 2, {pt(0, -1)}},
                          {2, 3, {pt(0, -1)}},
                          {2, 5, {pt(0, 0)}},
                          {3, 1, {pt(0, 0)}},
                          {3, 2, {pt(0, 0)}},
                          {4, 3, {pt(0, 0)}},
                          {4, 5, {pt(0, 1)}},
                          {5, 4, {pt(0, 0)}},
                          {5, 6, {pt(0, 0)}},
                          {6, 4, {pt(0, 1)}},
                          {6, 6, {pt(0, 1)}}});
  return f;
}

ExampleFixture ex33_4piece() {
  const auto p = ex33_pieces();
  ExampleFixture f{"ex33_4piece", "K=H u (-H) u K', B=[[-1,1],[-3,1]], simplest form (four prototiles)", ex33_k(), IntMatrix{{-1, 1}, {-3, 1}}, {}, {}, 2};
  f.atoms = {unite(p.h, p.e), p.f, unite(negate(p.e), negate(p.h)), negate(p.f)};
  f.digits = digits_from(4, 2,
                         {{1, 1, {pt(0, -1)}},
                          {1, 2, {pt(0, -1)}},
                          {1, 4, {pt(0, 0)}},
                          {2, 1, {pt(0, 0)}},
                          {3, 2, {pt(0, 0)}},
                          {3, 3, {pt(0, 1)}},
                          {3, 4, {pt(0, 1)}},
                          {4, 3, {pt(0, 0)}}});
  return f;
}

long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0)) ? 1 : 0); }

}  // namespace

DigitSystem DigitSystem::make(IntMatrix b, DigitMatrix digits) {
  if (!is_expansive(b)) throw InvalidMatrix("matrix " + to_string(b) + " is not expansive");
  if (digits.dim() != b.dim()) throw InvalidMatrix("digit dimension does not match the matrix");
  bool standard = true;
  for (const auto& column : digit_column_sets(digits).columns) {
    std::vector<LatticePoint> d(column.begin(), column.end());
    standard = standard && is_complete_coset_set(d, b);
  }
  return DigitSystem{std::move(b), std::move(digits), standard};
}

std::vector<std::vector<Region>> attractor_sequence(const DigitSystem& s, const Region& seed, unsigned depth) {
  if (!is_expansive(s.matrix)) throw InvalidMatrix("matrix " + to_string(s.matrix) + " is not expansive");
  if (seed.dim() != s.matrix.dim()) throw GeometryError("seed dimension does not match the matrix");
  const std::size_t m = s.digits.size();
  const AffineMap shrink = AffineMap::inverse_linear(s.matrix);
  std::vector<std::vector<Region>> history{std::vector<Region>(m, seed)};
  for (unsigned t = 0; t < depth; ++t) {
    const auto& current = history.back();
    std::vector<Region> next;
    next.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      Region acc(seed.dim());
      for (std::size_t j = 0; j < m; ++j)
        for (const auto& l : s.digits.at(i, j)) acc = unite(acc, translate(current[j], l));
      next.push_back(image(acc, shrink));
    }
    history.push_back(std::move(next));
  }
  return history;
}

std::vector<Region> attractor_approx(const DigitSystem& s, const Region& seed, unsigned depth) { return attractor_sequence(s, seed, depth).back(); }

Rat symmetric_difference_measure(const Region& a, const Region& b) { return subtract(a, b).measure() + subtract(b, a).measure(); }

ExampleFixture ex34_fixture(long p, long qd) {
  if (!(1 <= p && p < qd) || std::gcd(p, qd) != 1) throw std::invalid_argument("ex34 needs 1 <= p < q with gcd(p, q) = 1");
  ExampleFixture f{"ex34(" + std::to_string(p) + "," + std::to_string(qd) + ")",
                   "K=[-" + std::to_string(p) + "/" + std::to_string(qd) + ",1-" + std::to_string(p) + "/" + std::to_string(qd) + "], B=2, q-cell representation",
                   Region::interval(q(-p, qd), q(qd - p, qd)),
                   IntMatrix{{2}},
                   {},
                   DigitMatrix(static_cast<std::size_t>(qd), 1, 1),
                   std::nullopt};
  // Cell i (1-based) is [g/q, (g+1)/q] with grid index g = i - 1 - p. Its
  // double covers grid cells 2g and 2g+1, each equal to some cell j shifted
  // by an integer.
  for (long i = 1; i <= qd; ++i) {
    const long g = i - 1 - p;
    f.atoms.push_back(Region::interval(q(g, qd), q(g + 1, qd)));
    for (long h : {2 * g, 2 * g + 1}) {
      const long shift = floor_div(h + p, qd);
      const long j = h + p - shift * qd + 1;
      f.digits.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)).insert(pt(shift));
    }
  }
  return f;
}

ExampleFixture builtin_example(const std::string& id) {
  if (id == "ex31_4piece") return ex31_4piece();
  if (id == "ex31_3piece") return ex31_3piece();
  if (id == "ex32_tile") return ex32_tile();
  if (id == "ex32_2piece") return ex32_2piece();
  if (id == "ex33_6piece") return ex33_6piece();
  if (id == "ex33_4piece") return ex33_4piece();
  static const std::regex family(R"(ex34(?:\((\d+),(\d+)\)|_(\d+)_(\d+)))");
  std::smatch match;
  if (std::regex_match(id, match, family)) {
    const bool paren = match[1].matched;
    return ex34_fixture(std::stol(match[paren ? 1 : 3]), std::stol(match[paren ? 2 : 4]));
  }
  throw std::invalid_argument("unknown example id '" + id + "'");
}

std::vector<std::string> example_ids() { return {"ex31_4piece", "ex31_3piece", "ex32_tile", "ex32_2piece", "ex33_6piece", "ex33_4piece"}; }

}  // namespace multitile
