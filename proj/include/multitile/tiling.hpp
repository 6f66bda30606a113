#pragma once

#include <vector>

#include "multitile/region.hpp"

namespace multitile {

struct FoldedPiece {
  LatticePoint shift;
  /// (K + shift) intersected with the unit cube [0,1)^n.
  Region piece;
};

/// Every integer shift l for which K + l meets the unit cube in positive
/// measure, in lexicographic order of l.
std::vector<FoldedPiece> fold_to_torus(const Region& k);

/// K + Z^n covers R^n with multiplicity one (up to null sets).
bool is_lattice_tiling(const Region& k);

/// The unit cube [0,1]^n as a region.
Region unit_cube(std::size_t dim);

}  // namespace multitile
