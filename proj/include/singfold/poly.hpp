#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "singfold/exact.hpp"

namespace singfold {

using Exponents = std::vector<int>;

// Canonical symbol order: x y z X Y Z W, then t_i, xi_i, psi_i by index, then
// any other symbol alphabetically.
bool symbol_less(const std::string& a, const std::string& b);
bool valid_symbol(const std::string& s);

struct GrLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

template <class S>
class Polynomial {
 public:
  using TermMap = std::map<Exponents, S, GrLexLess>;

  Polynomial() = default;
  Polynomial(const S& c);  // NOLINT
  Polynomial(int c) : Polynomial(S(c)) {}  // NOLINT
  Polynomial(std::vector<std::string> vars, TermMap terms);
  static Polynomial variable(const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool has_variable(const std::string& v) const;
  int variable_index(const std::string& v) const;  // -1 if absent

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  S constant_term() const;
  int total_degree() const;  // -1 for zero
  int degree_in(const std::string& v) const;
  bool is_homogeneous(int degree) const;
  std::vector<std::string> used_variables() const;
  Polynomial pruned() const;  // drops variables that do not occur
  Polynomial with_variables(const std::vector<std::string>& vars) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.mul(b); }
  Polynomial mul(const Polynomial& o) const;
  Polynomial scaled(const S& c) const;
  Polynomial pow(unsigned e) const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return (a - b).is_zero(); }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial differentiate(const std::string& v) const;
  // simultaneous substitution; unbound variables are kept
  Polynomial substitute(const std::map<std::string, Polynomial>& bindings) const;
  Polynomial evaluate(const std::map<std::string, S>& values) const;
  Polynomial homogeneous_part(int degree) const;
  // weighted degree under per-variable weights (missing variables weigh 0)
  int weighted_degree(const std::map<std::string, int>& weights) const;
  Polynomial weighted_part(const std::map<std::string, int>& weights, int degree) const;
  // coefficients of v^0, v^1, ...; each coefficient is free of v
  std::vector<Polynomial> coefficients_in(const std::string& v) const;
  static Polynomial from_coefficients(const std::string& v, const std::vector<Polynomial>& coeffs);
  Polynomial map_coefficients(const std::function<S(const S&)>& f) const;

  std::string to_string() const;

 private:
  void normalize();
  Polynomial aligned(const std::vector<std::string>& vars) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

using QPoly = Polynomial<Rational>;
using KPoly = Polynomial<AlgebraicScalar>;

template <class S>
std::ostream& operator<<(std::ostream& os, const Polynomial<S>& p) {
  return os << p.to_string();
}

extern template class Polynomial<Rational>;
extern template class Polynomial<AlgebraicScalar>;

QPoly parse_polynomial(const std::string& text);
QPoly var(const std::string& name);
KPoly lift(const QPoly& p);

// p = q * r exactly; throws if q does not divide p
template <class S>
Polynomial<S> exact_divide(const Polynomial<S>& p, const Polynomial<S>& q);
// pseudo-remainder lc(q)^(deg p - deg q + 1) * p mod q in v
template <class S>
Polynomial<S> pseudo_remainder(const Polynomial<S>& p, const Polynomial<S>& q, const std::string& v);
// remainder of p modulo f, where f has constant leading coefficient in v
template <class S>
Polynomial<S> reduce_modulo(const Polynomial<S>& p, const Polynomial<S>& f, const std::string& v);

// Res_v(p, q) by the subresultant PRS
template <class S>
Polynomial<S> resultant(const Polynomial<S>& p, const Polynomial<S>& q, const std::string& v);

// monic gcd of two univariate polynomials in v; over an extension ring this
// can throw SplitException
template <class S>
Polynomial<S> gcd_univariate(const Polynomial<S>& p, const Polynomial<S>& q, const std::string& v);
std::variant<KPoly, SplitEvent> try_gcd_univariate(const KPoly& p, const KPoly& q, const std::string& v);

enum class BinaryCubicShape { ThreeDistinct, OneDouble, Triple, Zero };
std::string to_string(BinaryCubicShape s);

// shape of a binary cubic form in (u, v); decisions over an extension ring
// can throw SplitException
template <class S>
BinaryCubicShape binary_cubic_shape(const Polynomial<S>& c, const std::string& u, const std::string& v);

}  // namespace singfold
