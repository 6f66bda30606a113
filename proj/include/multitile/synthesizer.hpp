#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multitile/decomposer.hpp"

namespace multitile {

struct DigitSystem {
  IntMatrix matrix;
  DigitMatrix digits;
  /// Every column union D_j is a complete set of coset representatives.
  bool standard = false;

  /// Throws InvalidMatrix if B is not expansive or the shapes disagree.
  static DigitSystem make(IntMatrix b, DigitMatrix digits);
};

struct ExampleFixture {
  std::string id;
  std::string title;
  Region k;
  IntMatrix matrix;
  /// A self-affine representation of K (not necessarily minimal), with its
  /// digits in the same order.
  std::vector<Region> atoms;
  DigitMatrix digits;
  /// Level at which decompose() is expected to stop, when known.
  std::optional<unsigned> expected_m0;

  DigitSystem system() const { return DigitSystem::make(matrix, digits); }
};

/// K_i <- B^{-1} U_j (K_j + Gamma_ij), applied `depth` times to `seed`
/// (replicated for every index). Exact throughout.
std::vector<Region> attractor_approx(const DigitSystem& s, const Region& seed, unsigned depth);
/// Every intermediate approximation, index 0 being the seed.
std::vector<std::vector<Region>> attractor_sequence(const DigitSystem& s, const Region& seed, unsigned depth);

Rat symmetric_difference_measure(const Region& a, const Region& b);

/// ex31_4piece, ex31_3piece, ex32_tile, ex32_2piece, ex33_6piece,
/// ex33_4piece, and ex34(p,q) (also spelled ex34_p_q) for 1 <= p < q,
/// gcd(p,q) = 1. Throws std::invalid_argument for unknown ids.
ExampleFixture builtin_example(const std::string& id);
ExampleFixture ex34_fixture(long p, long q);
/// Fixed ids (without the ex34 family).
std::vector<std::string> example_ids();

}  // namespace multitile
