#include "multitile/decomposer.hpp"

#include <algorithm>
#include <map>

#include "multitile/tiling.hpp"

namespace multitile {

namespace {

DigitSet shifted_sum(const DigitSet& a, const DigitSet& b_image) {
  DigitSet out;
  for (const auto& x : a)
    for (const auto& y : b_image) out.insert(x + y);
  return out;
}

DigitSet image_of(const DigitSet& s, const IntMatrix& b) {
  DigitSet out;
  for (const auto& x : s) out.insert(b * x);
  return out;
}

// D_j^m = U_l (Gamma_lj + B D_l^{m-1}).
std::vector<DigitSet> next_columns(const DigitMatrix& base, const std::vector<DigitSet>& previous, const IntMatrix& b) {
  const std::size_t m = base.size();
  std::vector<DigitSet> scaled(m);
  for (std::size_t l = 0; l < m; ++l) scaled[l] = image_of(previous[l], b);
  std::vector<DigitSet> out(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < m; ++l) out[j].merge(shifted_sum(base.at(l, j), scaled[l]));
  return out;
}

std::vector<std::vector<std::size_t>> split_classes(const std::vector<std::vector<std::size_t>>& classes, const std::vector<DigitSet>& columns) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& cls : classes) {
    std::vector<std::vector<std::size_t>> parts;
    for (std::size_t idx : cls) {
      auto it = std::find_if(parts.begin(), parts.end(), [&](const auto& part) { return columns[part.front()] == columns[idx]; });
      if (it == parts.end()) {
        parts.push_back({idx});
      } else {
        it->push_back(idx);
      }
    }
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> one_class(std::size_t m) {
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  if (m == 0) return {};
  return {all};
}

// Classes reordered so that their merged atoms come out in canonical order.
std::vector<std::pair<Region, std::vector<std::size_t>>> merged_atoms(const Partition& p, const ClassPartition& c) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::pair<Region, std::vector<std::size_t>>> out;
  for (const auto& cls : c.classes) {
    if (cls.empty()) throw std::invalid_argument("empty class");
    std::vector<Region> parts;
    for (std::size_t i : cls) {
      if (i >= p.size() || seen[i]) throw std::invalid_argument("class index out of range or repeated");
      seen[i] = true;
      parts.push_back(p.atoms[i]);
    }
    out.emplace_back(disjoint_union(parts), cls);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw std::invalid_argument("classes do not cover the atom indices");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

Partition Partition::trivial(const Region& k) { return Partition{k, {k}}; }

Partition Partition::canonical(const Region& parent, std::vector<Region> atoms) {
  std::sort(atoms.begin(), atoms.end());
  return Partition{parent, std::move(atoms)};
}

Partition Partition::of(std::vector<Region> atoms) {
  Region parent = disjoint_union(atoms);
  return Partition{std::move(parent), std::move(atoms)};
}

DigitMatrix::DigitMatrix(std::size_t size, std::size_t dim, unsigned power)
    : size_(size), dim_(dim), power_(power), entries_(size * size) {}

bool ClassPartition::all_singletons() const {
  return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 1; });
}

CoverFailure::CoverFailure(std::size_t row, std::optional<std::size_t> column, std::optional<LatticePoint> shift, const std::string& what)
    : std::runtime_error(what), row_(row), column_(column), shift_(std::move(shift)) {}

std::string to_string(Status s) {
  switch (s) {
    case Status::SelfAffine:
      return "self_affine";
    case Status::InconclusiveAtDepth:
      return "inconclusive";
    case Status::NotLatticeTiling:
      return "not_lattice_tiling";
  }
  return "unknown";
}

std::vector<LatticePoint> intersecting_translates(const Region& k, const IntMatrix& b, unsigned level) {
  if (k.empty()) return {};
  const Region scaled = affine_image(k, b, level, LatticePoint::zero(k.dim()));
  std::vector<LatticePoint> out;
  for (auto& l : candidate_shifts(bounding_box(k), bounding_box(scaled)))
    if (sgn(overlap_measure(translate(scaled, l), k)) > 0) out.push_back(std::move(l));
  return out;
}

Partition refine(const Partition& p, const Region& k, const IntMatrix& b, unsigned level) {
  TraceLevel ignored;
  return refine(p, k, b, level, ignored);
}

Partition refine(const Partition& p, const Region& k, const IntMatrix& b, unsigned level, TraceLevel& trace) {
  trace = TraceLevel{level, {}, 0};
  const Region scaled = affine_image(k, b, level, LatticePoint::zero(k.dim()));
  std::vector<Region> atoms = p.atoms;
  for (const auto& l : intersecting_translates(k, b, level)) {
    const Region cutter = translate(scaled, l);
    if (essentially_contains(cutter, k)) continue;
    std::vector<Region> next;
    bool cut = false;
    for (auto& atom : atoms) {
      Region inside = intersect(atom, cutter);
      if (sgn(inside.measure()) == 0 || inside.measure() == atom.measure()) {
        next.push_back(std::move(atom));
        continue;
      }
      next.push_back(subtract(atom, cutter));
      next.push_back(std::move(inside));
      cut = true;
    }
    atoms = std::move(next);
    if (cut) trace.cutting_translates.push_back(l);
  }
  trace.atom_count = atoms.size();
  return Partition::canonical(p.parent, std::move(atoms));
}

DigitMatrix extract_digits(std::span<const Region> atoms, const IntMatrix& b) {
  const std::size_t m = atoms.size();
  const std::size_t n = b.dim();
  DigitMatrix digits(m, n, 1);
  std::vector<Box> boxes;
  for (const auto& a : atoms) boxes.push_back(bounding_box(a));
  for (std::size_t i = 0; i < m; ++i) {
    const Region image = affine_image(atoms[i], b, 1, LatticePoint::zero(n));
    const Box image_box = bounding_box(image);
    Rat covered = 0;
    for (std::size_t j = 0; j < m; ++j) {
      for (auto& l : candidate_shifts(image_box, boxes[j])) {
        const Rat overlap = overlap_measure(translate(atoms[j], l), image);
        if (sgn(overlap) == 0) continue;
        if (overlap != atoms[j].measure()) {
          throw CoverFailure(i, j, l,
                             "atom " + std::to_string(j + 1) + " shifted by " + to_string(l) + " is not contained in B * atom " + std::to_string(i + 1));
        }
        covered += overlap;
        digits.at(i, j).insert(std::move(l));
      }
    }
    if (covered != image.measure()) {
      throw CoverFailure(i, std::nullopt, std::nullopt,
                         "translates cover measure " + to_string(covered) + " of B * atom " + std::to_string(i + 1) + " (measure " +
                             to_string(image.measure()) + ")");
    }
  }
  return digits;
}

bool verify_self_affine_collection(std::span<const Region> atoms, const IntMatrix& b, const DigitMatrix& digits) {
  const std::size_t m = atoms.size();
  if (digits.size() != m) return false;
  const std::size_t n = b.dim();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Region> pieces;
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& l : digits.at(i, j)) {
        if (l.dim() != n) return false;
        pieces.push_back(translate(atoms[j], l));
      }
    for (std::size_t s = 0; s < pieces.size(); ++s)
      for (std::size_t t = s + 1; t < pieces.size(); ++t)
        if (sgn(overlap_measure(pieces[s], pieces[t])) > 0) return false;
    const Region image = affine_image(atoms[i], b, 1, LatticePoint::zero(n));
    const Region assembled = pieces.empty() ? Region(n) : disjoint_union(pieces);
    if (!essentially_equal(image, assembled)) return false;
  }
  return true;
}

DigitMatrix digit_power(const DigitMatrix& base, const DigitMatrix& previous, const IntMatrix& b) {
  const std::size_t m = base.size();
  if (previous.size() != m) throw std::invalid_argument("digit matrices differ in size");
  DigitMatrix out(m, base.dim(), previous.power() + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < m; ++l) {
      const DigitSet scaled = image_of(previous.at(i, l), b);
      if (scaled.empty()) continue;
      for (std::size_t j = 0; j < m; ++j) out.at(i, j).merge(shifted_sum(base.at(l, j), scaled));
    }
  return out;
}

DigitMatrix digit_power(const DigitMatrix& base, const IntMatrix& b, unsigned power) {
  if (power == 0) throw std::invalid_argument("digit power must be >= 1");
  DigitMatrix current = base;
  for (unsigned k = 1; k < power; ++k) current = digit_power(base, current, b);
  return current;
}

DigitColumnSets digit_column_sets(const DigitMatrix& digits) {
  DigitColumnSets out{digits.power(), std::vector<DigitSet>(digits.size())};
  for (std::size_t i = 0; i < digits.size(); ++i)
    for (std::size_t j = 0; j < digits.size(); ++j) out.columns[j].insert(digits.at(i, j).begin(), digits.at(i, j).end());
  return out;
}

ClassPartition equivalence_classes(const DigitMatrix& digits, const IntMatrix& b, unsigned depth) {
  if (depth == 0) throw std::invalid_argument("depth must be >= 1");
  std::vector<DigitSet> columns = digit_column_sets(digits).columns;
  auto classes = split_classes(one_class(digits.size()), columns);
  for (unsigned k = 2; k <= depth; ++k) {
    columns = next_columns(digits, columns, b);
    classes = split_classes(classes, columns);
  }
  return ClassPartition{std::move(classes), depth};
}

Partition merge_by_classes(const Partition& p, const ClassPartition& c) {
  std::vector<Region> atoms;
  for (auto& [region, cls] : merged_atoms(p, c)) atoms.push_back(std::move(region));
  return Partition{p.parent, std::move(atoms)};
}

DigitMatrix merge_digits(const Partition& p, const DigitMatrix& digits, const ClassPartition& c) {
  if (digits.size() != p.size()) throw std::invalid_argument("digit matrix does not match the partition");
  const auto merged = merged_atoms(p, c);
  DigitMatrix out(merged.size(), digits.dim(), digits.power());
  for (std::size_t s = 0; s < merged.size(); ++s)
    for (std::size_t t = 0; t < merged.size(); ++t) {
      const std::size_t j = merged[t].second.front();
      for (std::size_t i : merged[s].second) out.at(s, t).insert(digits.at(i, j).begin(), digits.at(i, j).end());
    }
  return out;
}

bool is_simplest_form(std::span<const Region> atoms, const IntMatrix& b, unsigned depth_cap) {
  const DigitMatrix digits = extract_digits(atoms, b);
  std::vector<DigitSet> columns = digit_column_sets(digits).columns;
  auto classes = split_classes(one_class(digits.size()), columns);
  unsigned unchanged = 0;
  for (unsigned depth = 2; depth <= depth_cap; ++depth) {
    if (ClassPartition{classes, depth}.all_singletons()) return true;
    columns = next_columns(digits, columns, b);
    auto next = split_classes(classes, columns);
    unchanged = next == classes ? unchanged + 1 : 0;
    classes = std::move(next);
    if (unchanged >= 2) break;
  }
  return ClassPartition{classes, std::nullopt}.all_singletons();
}

DecompositionResult decompose(const Region& k, const IntMatrix& b, unsigned max_depth) {
  if (!is_expansive(b)) throw InvalidMatrix("matrix " + to_string(b) + " is not expansive");
  if (k.dim() != b.dim()) throw InvalidMatrix("matrix dimension does not match the region");
  if (max_depth == 0) throw std::invalid_argument("max_depth must be >= 1");

  DecompositionResult result;
  if (!is_lattice_tiling(k)) {
    result.status = Status::NotLatticeTiling;
    result.diagnostics = "K is not a Z^n-tiling set (|K| = " + to_string(k.measure()) + ")";
    return result;
  }

  Partition p = Partition::trivial(k);
  unsigned unchanged = 0;
  for (unsigned level = 1; level <= max_depth; ++level) {
    TraceLevel trace;
    Partition next = refine(p, k, b, level, trace);
    result.trace.push_back(std::move(trace));
    unchanged = next == p ? unchanged + 1 : 0;
    p = std::move(next);

    std::optional<DigitMatrix> digits;
    try {
      digits = extract_digits(p.atoms, b);
    } catch (const CoverFailure& e) {
      result.diagnostics = "level " + std::to_string(level) + ": " + e.what();
    }
    if (digits && verify_self_affine_collection(p.atoms, b, *digits)) {
      const DigitColumnSets columns = digit_column_sets(*digits);
      for (std::size_t j = 0; j < columns.columns.size(); ++j) {
        std::vector<LatticePoint> d(columns.columns[j].begin(), columns.columns[j].end());
        if (!is_complete_coset_set(d, b)) {
          result.status = Status::InconclusiveAtDepth;
          result.depth_reached = level;
          result.diagnostics = "verified collection at level " + std::to_string(level) + " has a non-standard digit column " + std::to_string(j + 1);
          return result;
        }
      }
      if (!is_simplest_form(p.atoms, b, max_depth)) {
        result.status = Status::InconclusiveAtDepth;
        result.depth_reached = level;
        result.diagnostics = "verified collection at level " + std::to_string(level) + " is not in simplest form";
        return result;
      }
      result.status = Status::SelfAffine;
      result.stabilization_depth = level;
      result.minimal_partition = std::move(p);
      result.digits = std::move(digits);
      result.diagnostics.clear();
      return result;
    }
    if (unchanged >= 2) {
      result.status = Status::InconclusiveAtDepth;
      result.depth_reached = level;
      result.diagnostics = "partition stopped changing at level " + std::to_string(level) + " but is not a self-affine collection";
      return result;
    }
  }
  result.status = Status::InconclusiveAtDepth;
  result.depth_reached = max_depth;
  if (result.diagnostics.empty()) result.diagnostics = "no self-affine collection found up to depth " + std::to_string(max_depth);
  return result;
}

}  // namespace multitile
