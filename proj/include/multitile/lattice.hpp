#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace multitile {

using Int = mpz_class;
/// Exact rational. mpq_class keeps values canonical as long as every
/// construction from a raw numerator/denominator goes through make_rat().
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
/// Parses "p", "+p", "-p", "p/q" (q != 0). Throws std::invalid_argument.
Rat parse_rat(const std::string& text);
std::string to_string(const Rat& r);
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);

/// Thrown when a matrix cannot serve as a dilation (singular, wrong size,
/// or not expansive where expansiveness is required).
class InvalidMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integer vector in Z^n, n in {1, 2}.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Int> coords);
  LatticePoint(std::initializer_list<long> coords);

  static LatticePoint zero(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  const Int& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Int>& coords() const { return coords_; }
  bool is_zero() const;

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator-() const;

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.coords_ == b.coords_;
  }
  friend std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b);

 private:
  std::vector<Int> coords_;
};

std::string to_string(const LatticePoint& p);

/// Square integer matrix of dimension 1 or 2, stored row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  /// Throws InvalidMatrix unless rows form a 1x1 or 2x2 square.
  explicit IntMatrix(const std::vector<std::vector<Int>>& rows);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t dim);

  std::size_t dim() const { return n_; }
  const Int& at(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }
  std::vector<std::vector<Int>> rows() const;

  IntMatrix operator*(const IntMatrix& o) const;
  LatticePoint operator*(const LatticePoint& v) const;
  IntMatrix pow(unsigned k) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Int> entries_;
};

std::string to_string(const IntMatrix& m);

Int det(const IntMatrix& b);
Int trace(const IntMatrix& b);

/// Coefficients c[0..n] of det(lambda I - B), lowest degree first.
std::vector<Int> characteristic_polynomial(const IntMatrix& b);

/// Exact Schur-Cohn test: true iff every root of the polynomial with
/// coefficients `coeffs` (lowest degree first) lies strictly inside the unit
/// circle. A polynomial whose leading coefficient is zero has a root at
/// infinity and is rejected.
bool schur_cohn_stable(std::span<const Int> coeffs);

/// All eigenvalues of B have modulus > 1, decided exactly on the reversed
/// characteristic polynomial.
bool is_expansive(const IntMatrix& b);

/// x - y lies in B Z^n. Requires det(B) != 0.
bool same_coset(const LatticePoint& x, const LatticePoint& y, const IntMatrix& b);

/// |D| = |det B| and D hits every coset of Z^n / B Z^n exactly once.
bool is_complete_coset_set(std::span<const LatticePoint> digits, const IntMatrix& b);

}  // namespace multitile

