#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace singfold {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

// Dense univariate polynomial over Q; c_[i] is the coefficient of x^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int i) const;
  const Rational& lead() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  Rational eval(const Rational& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly exact_quotient(const UPoly& a, const UPoly& b);
// monic gcd; gcd(0, 0) = 0
UPoly gcd(const UPoly& a, const UPoly& b);
struct XGcd {
  UPoly g, s, t;  // s*a + t*b = g, g monic
};
XGcd xgcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& p);

struct SplitEvent {
  UPoly factor_a;
  UPoly factor_b;
};

class SplitException : public std::runtime_error {
 public:
  explicit SplitException(SplitEvent e)
      : std::runtime_error("zero divisor met; ring splits"), event(std::move(e)) {}
  SplitEvent event;
};

class ExtensionRing {
 public:
  ExtensionRing(UPoly modulus, std::string generator)
      : modulus_(std::move(modulus)), generator_(std::move(generator)) {}
  const UPoly& modulus() const { return modulus_; }
  const std::string& generator() const { return generator_; }
  int degree() const { return modulus_.degree(); }

 private:
  UPoly modulus_;
  std::string generator_;
};

using RingPtr = std::shared_ptr<const ExtensionRing>;

// squarefree part of the monic modulus; throws on zero or constant input
RingPtr make_extension(const UPoly& modulus, const std::string& generator = "a");
bool same_ring(const RingPtr& a, const RingPtr& b);
RingPtr rational_ring();

// An element of Q[a]/(m). A null ring marks a plain rational constant that
// adopts the ring of whatever it is combined with.
class AlgebraicScalar {
 public:
  AlgebraicScalar() = default;
  AlgebraicScalar(const Rational& q);  // NOLINT
  AlgebraicScalar(long q) : AlgebraicScalar(Rational(q)) {}  // NOLINT
  AlgebraicScalar(int q) : AlgebraicScalar(Rational(q)) {}  // NOLINT
  AlgebraicScalar(RingPtr ring, UPoly value);
  static AlgebraicScalar generator(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const UPoly& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_rational() const { return value_.degree() <= 0; }
  Rational rational_value() const;  // throws unless is_rational()

  AlgebraicScalar operator-() const;
  AlgebraicScalar& operator+=(const AlgebraicScalar& o);
  AlgebraicScalar& operator-=(const AlgebraicScalar& o);
  AlgebraicScalar& operator*=(const AlgebraicScalar& o);
  friend AlgebraicScalar operator+(AlgebraicScalar a, const AlgebraicScalar& b) { return a += b; }
  friend AlgebraicScalar operator-(AlgebraicScalar a, const AlgebraicScalar& b) { return a -= b; }
  friend AlgebraicScalar operator*(AlgebraicScalar a, const AlgebraicScalar& b) { return a *= b; }
  friend bool operator==(const AlgebraicScalar& a, const AlgebraicScalar& b);

  std::string to_string() const;

 private:
  RingPtr ring_;
  UPoly value_;
};

std::variant<AlgebraicScalar, SplitEvent> invert(const AlgebraicScalar& a);
// throwing form of invert; raises SplitException on a zero divisor
AlgebraicScalar inverse(const AlgebraicScalar& a);
AlgebraicScalar reduce_to(const AlgebraicScalar& a, const RingPtr& factor_ring);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const AlgebraicScalar& a) { return a.is_zero(); }
Rational inverse(const Rational& q);
inline std::string to_string(const AlgebraicScalar& a) { return a.to_string(); }

// Exact zero test that also settles zero divisors: returns false only when
// a is invertible, throws SplitException when a is neither zero nor a unit.
inline bool decide_zero(const Rational& q) { return is_zero(q); }
bool decide_zero(const AlgebraicScalar& a);

template <class S>
using Matrix = std::vector<std::vector<S>>;

template <class S>
struct RowReduced {
  int rank = 0;
  Matrix<S> matrix;
  std::vector<int> pivots;
};

// Reduced row echelon form. Over an extension ring the pivot inversions can
// throw SplitException.
template <class S>
RowReduced<S> rref(Matrix<S> m) {
  RowReduced<S> out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (const auto& r : m)
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t i = row; i < rows; ++i)
      if (!decide_zero(m[i][col])) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[row], m[piv]);
    S inv = inverse(m[row][col]);
    for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || is_zero(m[i][col])) continue;
      S f = m[i][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!is_zero(m[row][j])) m[i][j] = m[i][j] - f * m[row][j];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++row;
  }
  out.rank = static_cast<int>(row);
  out.matrix = std::move(m);
  return out;
}

RowReduced<Rational> row_reduce(const Matrix<Rational>& m);
std::variant<RowReduced<AlgebraicScalar>, SplitEvent> row_reduce(const Matrix<AlgebraicScalar>& m);

// basis of the right kernel, one vector per free column of the rref
template <class S>
Matrix<S> nullspace(const Matrix<S>& m, std::size_t cols) {
  RowReduced<S> r = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : r.pivots) is_pivot[p] = true;
  Matrix<S> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(cols, S(0));
    v[f] = S(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.matrix[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace singfold
