#include "multitile/lattice.hpp"

#include <algorithm>
#include <cctype>

namespace multitile {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rat parse_rat(const std::string& text) {
  std::string body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negative = body[0] == '-';
    body.erase(0, 1);
  }
  auto slash = body.find('/');
  std::string num = body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rat r = make_rat(Int(num), d);
  return negative ? Rat(-r) : r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

LatticePoint::LatticePoint(std::vector<Int> coords) : coords_(std::move(coords)) {}

LatticePoint::LatticePoint(std::initializer_list<long> coords) {
  for (long c : coords) coords_.emplace_back(c);
}

LatticePoint LatticePoint::zero(std::size_t dim) { return LatticePoint(std::vector<Int>(dim, Int(0))); }

bool LatticePoint::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Int& c) { return c == 0; });
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  std::vector<Int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i] + o.coords_[i];
  return LatticePoint(std::move(out));
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  std::vector<Int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i] - o.coords_[i];
  return LatticePoint(std::move(out));
}

LatticePoint LatticePoint::operator-() const {
  std::vector<Int> out(coords_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -coords_[i];
  return LatticePoint(std::move(out));
}

std::strong_ordering operator<=>(const LatticePoint& a, const LatticePoint& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.dim() <=> b.dim();
}

std::string to_string(const LatticePoint& p) {
  if (p.dim() == 1) return p[0].get_str();
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ",";
    s += p[i].get_str();
  }
  return s + ")";
}

IntMatrix::IntMatrix(const std::vector<std::vector<Int>>& rows) : n_(rows.size()) {
  if (n_ != 1 && n_ != 2) throw InvalidMatrix("matrix dimension must be 1 or 2");
  for (const auto& row : rows) {
    if (row.size() != n_) throw InvalidMatrix("matrix is not square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  *this = IntMatrix(r);
}

IntMatrix IntMatrix::identity(std::size_t dim) {
  std::vector<std::vector<Int>> r(dim, std::vector<Int>(dim, Int(0)));
  for (std::size_t i = 0; i < dim; ++i) r[i][i] = 1;
  return IntMatrix(r);
}

std::vector<std::vector<Int>> IntMatrix::rows() const {
  std::vector<std::vector<Int>> r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
  return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  std::vector<std::vector<Int>> r(n_, std::vector<Int>(n_, Int(0)));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) r[i][j] += at(i, k) * o.at(k, j);
  return IntMatrix(r);
}

LatticePoint IntMatrix::operator*(const LatticePoint& v) const {
  std::vector<Int> out(n_, Int(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) out[i] += at(i, k) * v[k];
  return LatticePoint(std::move(out));
}

IntMatrix IntMatrix::pow(unsigned k) const {
  IntMatrix result = identity(n_);
  IntMatrix base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    base = base * base;
    k >>= 1u;
  }
  return result;
}

std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) s += ",";
      s += m.at(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

Int det(const IntMatrix& b) {
  if (b.dim() == 1) return b.at(0, 0);
  return b.at(0, 0) * b.at(1, 1) - b.at(0, 1) * b.at(1, 0);
}

Int trace(const IntMatrix& b) {
  Int t = 0;
  for (std::size_t i = 0; i < b.dim(); ++i) t += b.at(i, i);
  return t;
}

std::vector<Int> characteristic_polynomial(const IntMatrix& b) {
  if (b.dim() == 1) return {Int(-b.at(0, 0)), Int(1)};
  return {det(b), Int(-trace(b)), Int(1)};
}

bool schur_cohn_stable(std::span<const Int> coeffs) {
  std::vector<Int> a(coeffs.begin(), coeffs.end());
  if (a.empty()) return false;
  if (a.back() == 0) return false;
  // Schur transform: f_1(z) = (a_n f(z) - a_0 f*(z)) / z, valid for real
  // coefficients. Each step needs |a_0| < |a_n|.
  while (a.size() > 1) {
    const std::size_t n = a.size() - 1;
    if (abs(a[0]) >= abs(a[n])) return false;
    std::vector<Int> next(n);
    for (std::size_t k = 0; k < n; ++k) next[k] = a[n] * a[k + 1] - a[0] * a[n - 1 - k];
    a = std::move(next);
  }
  return a[0] != 0;
}

bool is_expansive(const IntMatrix& b) {
  // lambda^n p(1/lambda) has the reciprocal eigenvalues as roots.
  std::vector<Int> p = characteristic_polynomial(b);
  std::reverse(p.begin(), p.end());
  return schur_cohn_stable(p);
}

bool same_coset(const LatticePoint& x, const LatticePoint& y, const IntMatrix& b) {
  const Int d = det(b);
  if (d == 0) throw InvalidMatrix("same_coset requires a nonsingular matrix");
  const LatticePoint diff = x - y;
  if (b.dim() == 1) return diff[0] % d == 0;
  // adj(B) * diff must be divisible by det(B) componentwise.
  const Int u = b.at(1, 1) * diff[0] - b.at(0, 1) * diff[1];
  const Int v = -b.at(1, 0) * diff[0] + b.at(0, 0) * diff[1];
  return u % d == 0 && v % d == 0;
}

bool is_complete_coset_set(std::span<const LatticePoint> digits, const IntMatrix& b) {
  const Int d = abs(det(b));
  if (d == 0) throw InvalidMatrix("coset test requires a nonsingular matrix");
  if (Int(static_cast<unsigned long>(digits.size())) != d) return false;
  for (std::size_t i = 0; i < digits.size(); ++i)
    for (std::size_t j = i + 1; j < digits.size(); ++j)
      if (same_coset(digits[i], digits[j], b)) return false;
  return true;
}

}  // namespace multitile
