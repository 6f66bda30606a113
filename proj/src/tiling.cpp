#include "multitile/tiling.hpp"

namespace multitile {

Region unit_cube(std::size_t dim) {
  if (dim == 1) return Region::interval(0, 1);
  return Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

std::vector<FoldedPiece> fold_to_torus(const Region& k) {
  std::vector<FoldedPiece> out;
  if (k.empty()) return out;
  const Region cube = unit_cube(k.dim());
  for (const auto& l : candidate_shifts(bounding_box(cube), bounding_box(k))) {
    Region piece = intersect(translate(k, l), cube);
    if (sgn(piece.measure()) > 0) out.push_back({l, std::move(piece)});
  }
  return out;
}

bool is_lattice_tiling(const Region& k) {
  if (k.measure() != 1) return false;
  const auto pieces = fold_to_torus(k);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (sgn(overlap_measure(pieces[i].piece, pieces[j].piece)) > 0) return false;
  return true;
}

}  // namespace multitile
