#include "singfold/exact.hpp"

#include <sstream>

namespace singfold {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

UPoly UPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

const Rational& UPoly::lead() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  if (sgn(s) == 0) return UPoly();
  UPoly r = a;
  for (auto& c : r.c_) c *= s;
  return r;
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / lead();
  return inv * *this;
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(a.degree() - b.degree() + 1);
  Rational inv = 1 / b.lead();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(r[i]) == 0) continue;
    Rational f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j];
  }
  r.resize(db);
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XGcd xgcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(1), s1;
  UPoly t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.lead();
  return {inv * r0, inv * s0, inv * t0};
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return exact_quotient(p, gcd(p, p.derivative())).monic();
}

RingPtr make_extension(const UPoly& modulus, const std::string& generator) {
  if (modulus.degree() < 1) throw std::invalid_argument("extension modulus must have degree >= 1");
  return std::make_shared<const ExtensionRing>(squarefree_part(modulus), generator);
}

RingPtr rational_ring() {
  static const RingPtr q = make_extension(UPoly(std::vector<Rational>{0, 1}), "a");
  return q;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->modulus() == b->modulus();
}

AlgebraicScalar::AlgebraicScalar(const Rational& q) : value_(UPoly::constant(q)) {}

AlgebraicScalar::AlgebraicScalar(RingPtr ring, UPoly value) : ring_(std::move(ring)), value_(std::move(value)) {
  if (ring_ && value_.degree() >= ring_->degree()) value_ = value_ % ring_->modulus();
}

AlgebraicScalar AlgebraicScalar::generator(const RingPtr& ring) {
  return AlgebraicScalar(ring, UPoly::monomial(1, 1));
}

Rational AlgebraicScalar::rational_value() const {
  if (!is_rational()) throw std::domain_error("algebraic scalar is not rational");
  return value_.coeff(0);
}

static const RingPtr& join(const RingPtr& a, const RingPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (!same_ring(a, b)) throw std::invalid_argument("arithmetic on mismatched extension rings");
  return a;
}

AlgebraicScalar AlgebraicScalar::operator-() const {
  AlgebraicScalar r = *this;
  r.value_ = -r.value_;
  return r;
}

AlgebraicScalar& AlgebraicScalar::operator+=(const AlgebraicScalar& o) {
  ring_ = join(ring_, o.ring_);
  value_ += o.value_;
  return *this;
}

AlgebraicScalar& AlgebraicScalar::operator-=(const AlgebraicScalar& o) {
  ring_ = join(ring_, o.ring_);
  value_ -= o.value_;
  return *this;
}

AlgebraicScalar& AlgebraicScalar::operator*=(const AlgebraicScalar& o) {
  ring_ = join(ring_, o.ring_);
  if (value_.degree() == 0) {
    value_ = value_.coeff(0) * o.value_;
  } else if (o.value_.degree() == 0) {
    value_ = o.value_.coeff(0) * value_;
  } else {
    value_ = value_ * o.value_;
    if (ring_ && value_.degree() >= ring_->degree()) value_ = value_ % ring_->modulus();
  }
  return *this;
}

bool operator==(const AlgebraicScalar& a, const AlgebraicScalar& b) {
  if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_)) return false;
  return a.value_ == b.value_;
}

std::string AlgebraicScalar::to_string() const {
  return value_.to_string(ring_ ? ring_->generator() : "a");
}

std::variant<AlgebraicScalar, SplitEvent> invert(const AlgebraicScalar& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  if (a.value().degree() == 0) return AlgebraicScalar(a.ring(), UPoly::constant(1 / a.value().coeff(0)));
  const UPoly& m = a.ring()->modulus();
  XGcd e = xgcd(a.value(), m);
  if (e.g.degree() == 0) return AlgebraicScalar(a.ring(), e.s);
  return SplitEvent{e.g, exact_quotient(m, e.g)};
}

AlgebraicScalar inverse(const AlgebraicScalar& a) {
  auto r = invert(a);
  if (auto* e = std::get_if<SplitEvent>(&r)) throw SplitException(std::move(*e));
  return std::get<AlgebraicScalar>(std::move(r));
}

Rational inverse(const Rational& q) {
  if (sgn(q) == 0) throw std::domain_error("inverse of zero");
  return 1 / q;
}

AlgebraicScalar reduce_to(const AlgebraicScalar& a, const RingPtr& factor_ring) {
  return AlgebraicScalar(factor_ring, a.value() % factor_ring->modulus());
}

bool decide_zero(const AlgebraicScalar& a) {
  if (a.is_zero()) return true;
  if (a.value().degree() == 0) return false;
  inverse(a);
  return false;
}

RowReduced<Rational> row_reduce(const Matrix<Rational>& m) { return rref(m); }

std::variant<RowReduced<AlgebraicScalar>, SplitEvent> row_reduce(const Matrix<AlgebraicScalar>& m) {
  const RingPtr* ring = nullptr;
  for (const auto& r : m)
    for (const auto& e : r) {
      if (!e.ring()) continue;
      if (ring && !same_ring(*ring, e.ring())) throw std::invalid_argument("matrix entries in different rings");
      ring = &e.ring();
    }
  try {
    return rref(m);
  } catch (SplitException& ex) {
    return ex.event;
  }
}

}  // namespace singfold
