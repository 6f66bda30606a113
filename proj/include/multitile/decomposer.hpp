#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "multitile/region.hpp"

namespace multitile {

using DigitSet = std::set<LatticePoint>;

/// An ordered family of essentially disjoint atoms whose union is `parent`.
/// Partitions produced by refine() and decompose() are in canonical order
/// (ascending Region order); hand-built ones keep the order they were given.
struct Partition {
  Region parent;
  std::vector<Region> atoms;

  static Partition trivial(const Region& k);
  /// Sorts the atoms into canonical order.
  static Partition canonical(const Region& parent, std::vector<Region> atoms);
  /// Union of the atoms, with the parent set to it.
  static Partition of(std::vector<Region> atoms);

  std::size_t size() const { return atoms.size(); }
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// M x M array of finite subsets of Z^n. `power` is m for the m-th digit
/// power Gamma^m; the digits of a self-affine collection have power 1.
class DigitMatrix {
 public:
  DigitMatrix() = default;
  DigitMatrix(std::size_t size, std::size_t dim, unsigned power = 1);

  std::size_t size() const { return size_; }
  std::size_t dim() const { return dim_; }
  unsigned power() const { return power_; }

  DigitSet& at(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }
  const DigitSet& at(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }

  friend bool operator==(const DigitMatrix&, const DigitMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::size_t dim_ = 1;
  unsigned power_ = 1;
  std::vector<DigitSet> entries_;
};

struct DigitColumnSets {
  unsigned power = 1;
  std::vector<DigitSet> columns;
};

/// Classes of the index set {0..M-1}; each class sorted, classes ordered by
/// their smallest member. depth == nullopt stands for the limit relation.
struct ClassPartition {
  std::vector<std::vector<std::size_t>> classes;
  std::optional<unsigned> depth;

  bool all_singletons() const;
  friend bool operator==(const ClassPartition&, const ClassPartition&) = default;
};

/// B P_i is not an essentially disjoint union of integer translates of atoms.
class CoverFailure : public std::runtime_error {
 public:
  CoverFailure(std::size_t row, std::optional<std::size_t> column, std::optional<LatticePoint> shift, const std::string& what);

  std::size_t row() const { return row_; }
  const std::optional<std::size_t>& column() const { return column_; }
  const std::optional<LatticePoint>& shift() const { return shift_; }

 private:
  std::size_t row_;
  std::optional<std::size_t> column_;
  std::optional<LatticePoint> shift_;
};

enum class Status { SelfAffine, InconclusiveAtDepth, NotLatticeTiling };

std::string to_string(Status s);

struct TraceLevel {
  unsigned level = 0;
  /// Translates of B^level K that actually split an atom.
  std::vector<LatticePoint> cutting_translates;
  std::size_t atom_count = 0;
};

struct DecompositionResult {
  Status status = Status::InconclusiveAtDepth;
  /// Depth at which the search gave up (InconclusiveAtDepth only).
  unsigned depth_reached = 0;
  std::optional<Partition> minimal_partition;
  std::optional<DigitMatrix> digits;
  unsigned stabilization_depth = 0;
  std::vector<TraceLevel> trace;
  std::string diagnostics;
};

inline constexpr unsigned kDefaultMaxDepth = 32;

/// Sorted l in Z^n with |(B^k K + l) intersect K| > 0.
std::vector<LatticePoint> intersecting_translates(const Region& k, const IntMatrix& b, unsigned level);

/// Splits every atom along each translate of B^level K that meets K.
Partition refine(const Partition& p, const Region& k, const IntMatrix& b, unsigned level);
Partition refine(const Partition& p, const Region& k, const IntMatrix& b, unsigned level, TraceLevel& trace);

/// Gamma[i][j] = { l : P_j + l meets B P_i }. Throws CoverFailure unless
/// every such translate lies inside B P_i and the translates fill B P_i.
DigitMatrix extract_digits(std::span<const Region> atoms, const IntMatrix& b);

/// B P_i equals the union of P_j + Gamma[i][j] for every i, with all those
/// translated pieces pairwise essentially disjoint.
bool verify_self_affine_collection(std::span<const Region> atoms, const IntMatrix& b, const DigitMatrix& digits);

/// One step of Gamma^m_ij = U_l (Gamma_lj + B Gamma^{m-1}_il).
DigitMatrix digit_power(const DigitMatrix& base, const DigitMatrix& previous, const IntMatrix& b);
/// Gamma^power, computed by repeated digit_power from base (power 1).
DigitMatrix digit_power(const DigitMatrix& base, const IntMatrix& b, unsigned power);

/// D_j = union over rows of column j.
DigitColumnSets digit_column_sets(const DigitMatrix& digits);

/// i ~ j iff D_i^k = D_j^k for all 1 <= k <= depth.
ClassPartition equivalence_classes(const DigitMatrix& digits, const IntMatrix& b, unsigned depth);

/// Unions of atoms per class, in canonical order.
Partition merge_by_classes(const Partition& p, const ClassPartition& c);
/// Lambda_st = U_{i in F_s} Gamma_ij (j the first member of F_t), indexed to
/// match merge_by_classes(p, c).
DigitMatrix merge_digits(const Partition& p, const DigitMatrix& digits, const ClassPartition& c);

/// All ~ classes are singletons. The depth search stops once the classes
/// have not split for two consecutive depths, or at depth_cap.
bool is_simplest_form(std::span<const Region> atoms, const IntMatrix& b, unsigned depth_cap);

/// Throws InvalidMatrix if B is not expansive.
DecompositionResult decompose(const Region& k, const IntMatrix& b, unsigned max_depth = kDefaultMaxDepth);

}  // namespace multitile
