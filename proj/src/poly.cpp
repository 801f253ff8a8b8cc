#include "singfold/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace singfold {

namespace {

// (group, index, name) sort key
std::tuple<int, int, std::string> symbol_key(const std::string& s) {
  static const std::string fixed[] = {"x", "y", "z", "X", "Y", "Z", "W"};
  for (int i = 0; i < 7; ++i)
    if (s == fixed[i]) return {0, i, ""};
  auto indexed = [&](const std::string& prefix, int group) -> std::optional<std::tuple<int, int, std::string>> {
    if (s.size() < prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    std::string rest = s.substr(prefix.size());
    if (rest.empty()) return std::make_tuple(group, 1000, std::string());
    if (!std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); }) || rest.size() > 6)
      return std::nullopt;
    return std::make_tuple(group, std::stoi(rest), std::string());
  };
  if (auto k = indexed("t", 1)) return *k;
  if (auto k = indexed("xi", 2)) return *k;
  if (auto k = indexed("psi", 3)) return *k;
  return {4, 0, s};
}

Exponents remap(const Exponents& e, const std::vector<int>& where, std::size_t n) {
  Exponents r(n, 0);
  for (std::size_t i = 0; i < e.size(); ++i) r[where[i]] = e[i];
  return r;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r), symbol_less);
  return r;
}

std::vector<int> positions(const std::vector<std::string>& from, const std::vector<std::string>& to) {
  std::vector<int> where(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = std::lower_bound(to.begin(), to.end(), from[i], symbol_less);
    if (it == to.end() || *it != from[i]) throw std::logic_error("variable alignment failed");
    where[i] = static_cast<int>(it - to.begin());
  }
  return where;
}

template <class S>
std::string coeff_string(const S& c, bool& negative, bool& unit) {
  if constexpr (std::is_same_v<S, Rational>) {
    negative = sgn(c) < 0;
    Rational a = abs(c);
    unit = a == 1;
    return a.get_str();
  } else {
    if (c.is_rational()) {
      Rational q = c.rational_value();
      negative = sgn(q) < 0;
      Rational a = abs(q);
      unit = a == 1;
      return a.get_str();
    }
    negative = false;
    unit = false;
    return "(" + c.to_string() + ")";
  }
}

}  // namespace

bool symbol_less(const std::string& a, const std::string& b) { return symbol_key(a) < symbol_key(b); }

bool valid_symbol(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

bool GrLexLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  // larger exponent on an earlier variable ranks higher
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

template <class S>
Polynomial<S>::Polynomial(const S& c) {
  if (!singfold::is_zero(c)) terms_.emplace(Exponents{}, c);
}

template <class S>
Polynomial<S>::Polynomial(std::vector<std::string> vars, TermMap terms) {
  std::vector<std::string> sorted = vars;
  std::sort(sorted.begin(), sorted.end(), symbol_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate variable");
  for (const auto& v : sorted)
    if (!valid_symbol(v)) throw std::invalid_argument("bad symbol: " + v);
  if (sorted == vars) {
    vars_ = std::move(vars);
    terms_ = std::move(terms);
  } else {
    auto where = positions(vars, sorted);
    vars_ = sorted;
    for (auto& [e, c] : terms) {
      if (e.size() != where.size()) throw std::invalid_argument("exponent length mismatch");
      terms_[remap(e, where, sorted.size())] += c;
    }
  }
  normalize();
}

template <class S>
Polynomial<S> Polynomial<S>::variable(const std::string& name) {
  if (!valid_symbol(name)) throw std::invalid_argument("bad symbol: " + name);
  Polynomial p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, S(1));
  return p;
}

template <class S>
void Polynomial<S>::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
    if (singfold::is_zero(it->second))
      it = terms_.erase(it);
    else
      ++it;
  }
}

template <class S>
bool Polynomial<S>::has_variable(const std::string& v) const {
  return variable_index(v) >= 0;
}

template <class S>
int Polynomial<S>::variable_index(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v, symbol_less);
  if (it == vars_.end() || *it != v) return -1;
  return static_cast<int>(it - vars_.begin());
}

template <class S>
bool Polynomial<S>::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

template <class S>
S Polynomial<S>::constant_term() const {
  Exponents zero(vars_.size(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? S(0) : it->second;
}

template <class S>
int Polynomial<S>::total_degree() const {
  if (terms_.empty()) return -1;
  const Exponents& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

template <class S>
int Polynomial<S>::degree_in(const std::string& v) const {
  if (terms_.empty()) return -1;
  int i = variable_index(v);
  if (i < 0) return 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

template <class S>
bool Polynomial<S>::is_homogeneous(int degree) const {
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) != degree) return false;
  return true;
}

template <class S>
std::vector<std::string> Polynomial<S>::used_variables() const {
  std::vector<std::string> r;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) {
        r.push_back(vars_[i]);
        break;
      }
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::pruned() const {
  auto used = used_variables();
  if (used.size() == vars_.size()) return *this;
  Polynomial r;
  r.vars_ = used;
  std::vector<int> keep;
  for (const auto& u : used) keep.push_back(variable_index(u));
  for (const auto& [e, c] : terms_) {
    Exponents f;
    for (int k : keep) f.push_back(e[k]);
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::aligned(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  auto where = positions(vars_, vars);
  Polynomial r;
  r.vars_ = vars;
  for (const auto& [e, c] : terms_) r.terms_.emplace(remap(e, where, vars.size()), c);
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::with_variables(const std::vector<std::string>& vars) const {
  std::vector<std::string> sorted = vars;
  std::sort(sorted.begin(), sorted.end(), symbol_less);
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return aligned(merge_vars(vars_, sorted));
}

template <class S>
Polynomial<S> Polynomial<S>::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

template <class S>
Polynomial<S>& Polynomial<S>::operator+=(const Polynomial& o) {
  if (o.vars_ != vars_) {
    auto vars = merge_vars(vars_, o.vars_);
    *this = aligned(vars);
    return *this += o.aligned(vars);
  }
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (singfold::is_zero(it->second)) terms_.erase(it);
    }
  }
  return *this;
}

template <class S>
Polynomial<S>& Polynomial<S>::operator-=(const Polynomial& o) {
  return *this += -o;
}

template <class S>
Polynomial<S> Polynomial<S>::mul(const Polynomial& o) const {
  if (o.vars_ != vars_) {
    auto vars = merge_vars(vars_, o.vars_);
    return aligned(vars).mul(o.aligned(vars));
  }
  Polynomial r;
  r.vars_ = vars_;
  if (terms_.empty() || o.terms_.empty()) return r;
  Exponents e(vars_.size());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = r.terms_.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  r.normalize();
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::scaled(const S& c) const {
  Polynomial r;
  r.vars_ = vars_;
  if (singfold::is_zero(c)) return r;
  for (const auto& [e, a] : terms_) r.terms_.emplace(e, a * c);
  r.normalize();
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::pow(unsigned e) const {
  Polynomial result(S(1));
  result = result.aligned(vars_);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

template <class S>
Polynomial<S> Polynomial<S>::differentiate(const std::string& v) const {
  int i = variable_index(v);
  if (i < 0) throw std::invalid_argument("unknown variable: " + v);
  Polynomial r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    f[i] -= 1;
    r.terms_.emplace(std::move(f), c * S(e[i]));
  }
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::substitute(const std::map<std::string, Polynomial>& bindings) const {
  std::vector<int> bound;
  std::vector<const Polynomial*> values;
  std::vector<std::string> kept;
  std::vector<int> kept_index;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    if (it != bindings.end()) {
      bound.push_back(static_cast<int>(i));
      values.push_back(&it->second);
    } else {
      kept.push_back(vars_[i]);
      kept_index.push_back(static_cast<int>(i));
    }
  }
  if (bound.empty()) return *this;
  std::vector<std::string> all = kept;
  for (auto* p : values) all = merge_vars(all, p->vars_);
  // power caches per bound variable
  std::vector<std::vector<Polynomial>> powers(bound.size());
  for (std::size_t k = 0; k < bound.size(); ++k) powers[k].push_back(Polynomial(S(1)).aligned(all));
  auto power = [&](std::size_t k, int e) -> const Polynomial& {
    while (static_cast<int>(powers[k].size()) <= e) powers[k].push_back(powers[k].back() * values[k]->aligned(all));
    return powers[k][e];
  };
  auto where = positions(kept, all);
  // group terms by their bound-variable exponents
  std::map<Exponents, Polynomial> groups;
  for (const auto& [e, c] : terms_) {
    Exponents be;
    for (int b : bound) be.push_back(e[b]);
    Exponents ke;
    for (int k : kept_index) ke.push_back(e[k]);
    auto& g = groups[be];
    if (g.vars_.empty() && g.terms_.empty()) g.vars_ = all;
    g.terms_.emplace(remap(ke, where, all.size()), c);
  }
  Polynomial r = Polynomial(S(0)).aligned(all);
  for (const auto& [be, g] : groups) {
    Polynomial m = g;
    for (std::size_t k = 0; k < bound.size(); ++k)
      if (be[k]) m = m * power(k, be[k]);
    r += m;
  }
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::evaluate(const std::map<std::string, S>& values) const {
  std::map<std::string, Polynomial> b;
  for (const auto& [k, v] : values) b.emplace(k, Polynomial(v));
  return substitute(b);
}

template <class S>
Polynomial<S> Polynomial<S>::homogeneous_part(int degree) const {
  Polynomial r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_)
    if (std::accumulate(e.begin(), e.end(), 0) == degree) r.terms_.emplace(e, c);
  return r;
}

template <class S>
int Polynomial<S>::weighted_degree(const std::map<std::string, int>& weights) const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int w = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = weights.find(vars_[i]);
      if (it != weights.end()) w += it->second * e[i];
    }
    best = std::max(best, w);
  }
  return best;
}

template <class S>
Polynomial<S> Polynomial<S>::weighted_part(const std::map<std::string, int>& weights, int degree) const {
  Polynomial r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    int w = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = weights.find(vars_[i]);
      if (it != weights.end()) w += it->second * e[i];
    }
    if (w == degree) r.terms_.emplace(e, c);
  }
  return r;
}

template <class S>
std::vector<Polynomial<S>> Polynomial<S>::coefficients_in(const std::string& v) const {
  int i = variable_index(v);
  std::vector<Polynomial> out;
  if (i < 0) {
    if (!is_zero()) out.push_back(*this);
    return out;
  }
  std::vector<std::string> rest = vars_;
  rest.erase(rest.begin() + i);
  int d = degree_in(v);
  out.resize(d + 1);
  for (auto& p : out) p.vars_ = rest;
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    f.erase(f.begin() + i);
    out[e[i]].terms_.emplace(std::move(f), c);
  }
  return out;
}

template <class S>
Polynomial<S> Polynomial<S>::from_coefficients(const std::string& v, const std::vector<Polynomial>& coeffs) {
  Polynomial x = variable(v);
  Polynomial r;
  Polynomial xp(S(1));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) r += coeffs[k] * xp;
    if (k + 1 < coeffs.size()) xp = xp * x;
  }
  return r;
}

template <class S>
Polynomial<S> Polynomial<S>::map_coefficients(const std::function<S(const S&)>& f) const {
  Polynomial r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, f(c));
  r.normalize();
  return r;
}

template <class S>
std::string Polynomial<S>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool negative = false, unit = false;
    std::string cs = coeff_string(c, negative, unit);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      os << cs;
    else if (unit)
      os << mono;
    else
      os << cs << "*" << mono;
  }
  return os.str();
}

template class Polynomial<Rational>;
template class Polynomial<AlgebraicScalar>;

// ---- parsing ----

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  QPoly parse() {
    QPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly expr() {
    skip();
    QPoly acc;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  QPoly term() {
    QPoly acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        QPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scaled(1 / d.constant_term());
      } else {
        break;
      }
    }
    return acc;
  }

  QPoly power() {
    QPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  QPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QPoly(Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return QPoly::variable(s_.substr(start, pos_ - start));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

QPoly parse_polynomial(const std::string& text) { return Parser(text).parse(); }

QPoly var(const std::string& name) { return QPoly::variable(name); }

KPoly lift(const QPoly& p) {
  KPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) t.emplace(e, AlgebraicScalar(c));
  return KPoly(p.variables(), std::move(t));
}

// ---- division, resultants, gcd ----

template <class S>
Polynomial<S> exact_divide(const Polynomial<S>& p, const Polynomial<S>& q) {
  if (q.is_zero()) throw std::domain_error("division by zero polynomial");
  auto vars = p.variables();
  for (const auto& v : q.variables())
    if (!p.has_variable(v)) vars.push_back(v);
  Polynomial<S> rem = p.with_variables(vars);
  Polynomial<S> d = q.with_variables(rem.variables());
  const auto& [le, lc] = *d.terms().rbegin();
  S lc_inv = inverse(lc);
  typename Polynomial<S>::TermMap quot;
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().rbegin();
    Exponents qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      qe[i] = re[i] - le[i];
      if (qe[i] < 0) throw std::domain_error("inexact multivariate division");
    }
    S qc = rc * lc_inv;
    typename Polynomial<S>::TermMap one;
    one.emplace(qe, qc);
    Polynomial<S> m(rem.variables(), std::move(one));
    quot.emplace(qe, qc);
    rem -= m * d;
  }
  return Polynomial<S>(rem.variables(), std::move(quot)).pruned();
}

template <class S>
Polynomial<S> pseudo_remainder(const Polynomial<S>& p, const Polynomial<S>& q, const std::string& v) {
  auto a = p.coefficients_in(v);
  auto b = q.coefficients_in(v);
  if (b.empty()) throw std::domain_error("pseudo-remainder by zero");
  int db = static_cast<int>(b.size()) - 1;
  if (static_cast<int>(a.size()) - 1 < db) return p;
  int e = static_cast<int>(a.size()) - 1 - db + 1;
  const Polynomial<S>& lb = b.back();
  while (static_cast<int>(a.size()) - 1 >= db) {
    int da = static_cast<int>(a.size()) - 1;
    Polynomial<S> la = a.back();
    for (auto& c : a) c = c * lb;
    for (int j = 0; j <= db; ++j) a[da - db + j] -= la * b[j];
    --e;
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    if (a.empty()) break;
  }
  Polynomial<S> r = Polynomial<S>::from_coefficients(v, a);
  if (e > 0) r = r * lb.pow(static_cast<unsigned>(e));
  return r;
}

template <class S>
Polynomial<S> reduce_modulo(const Polynomial<S>& p, const Polynomial<S>& f, const std::string& v) {
  auto b = f.coefficients_in(v);
  if (b.empty() || !b.back().is_constant()) throw std::domain_error("reduce_modulo needs a constant leading coefficient");
  int db = static_cast<int>(b.size()) - 1;
  S inv = inverse(b.back().constant_term());
  auto a = p.coefficients_in(v);
  for (int da = static_cast<int>(a.size()) - 1; da >= db; --da) {
    if (a[da].is_zero()) continue;
    Polynomial<S> f0 = a[da].scaled(inv);
    for (int j = 0; j <= db; ++j) a[da - db + j] -= f0 * b[j];
  }
  if (static_cast<int>(a.size()) > db) a.resize(db);
  return Polynomial<S>::from_coefficients(v, a).with_variables(p.variables());
}

template <class S>
Polynomial<S> resultant(const Polynomial<S>& p, const Polynomial<S>& q, const std::string& v) {
  using P = Polynomial<S>;
  if (p.is_zero() || q.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  P A = p, B = q;
  int da = A.degree_in(v), db = B.degree_in(v);
  S sign(1);
  if (da < db) {
    std::swap(A, B);
    std::swap(da, db);
    if ((da % 2) && (db % 2)) sign = -sign;
  }
  auto lead = [&](const P& x) { return x.coefficients_in(v).back(); };
  if (db == 0) return B.pow(static_cast<unsigned>(da)).scaled(sign).pruned();
  P g(S(1)), h(S(1));
  for (;;) {
    int delta = da - db;
    if ((da % 2) && (db % 2)) sign = -sign;
    P R = pseudo_remainder(A, B, v);
    A = B;
    if (R.is_zero()) return P();
    B = exact_divide(R, g * h.pow(static_cast<unsigned>(delta)));
    g = lead(A);
    if (delta == 0) {
      // h unchanged
    } else {
      h = exact_divide(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
    da = A.degree_in(v);
    db = B.degree_in(v);
    if (db == 0) break;
  }
  P lb = lead(B);
  P r = exact_divide(lb.pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
  return r.scaled(sign).pruned();
}

namespace {

template <class S>
using Dense = std::vector<S>;

template <class S>
void trim_dense(Dense<S>& a) {
  while (!a.empty() && decide_zero(a.back())) a.pop_back();
}

template <class S>
Dense<S> dense_of(const Polynomial<S>& p, const std::string& v) {
  for (const auto& u : p.used_variables())
    if (u != v) throw std::invalid_argument("gcd_univariate: polynomial not univariate in " + v);
  Dense<S> d;
  for (const auto& c : p.coefficients_in(v)) d.push_back(c.constant_term());
  return d;
}

template <class S>
Dense<S> dense_rem(Dense<S> a, const Dense<S>& b) {
  // b is trimmed with invertible leading coefficient
  S inv = inverse(b.back());
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    S f = a.back() * inv;
    const std::size_t off = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[off + j] -= f * b[j];
    a.pop_back();
    trim_dense(a);
  }
  return a;
}

}  // namespace

template <class S>
Polynomial<S> gcd_univariate(const Polynomial<S>& p, const Polynomial<S>& q, const std::string& v) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  Dense<S> a = dense_of(p, v), b = dense_of(q, v);
  trim_dense(a);
  trim_dense(b);
  while (!b.empty()) {
    Dense<S> r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  S inv = inverse(a.back());
  std::vector<Polynomial<S>> coeffs;
  for (auto& c : a) coeffs.push_back(Polynomial<S>(c * inv));
  return Polynomial<S>::from_coefficients(v, coeffs);
}

std::variant<KPoly, SplitEvent> try_gcd_univariate(const KPoly& p, const KPoly& q, const std::string& v) {
  try {
    return gcd_univariate(p, q, v);
  } catch (SplitException& e) {
    return e.event;
  }
}

std::string to_string(BinaryCubicShape s) {
  switch (s) {
    case BinaryCubicShape::ThreeDistinct:
      return "three-distinct";
    case BinaryCubicShape::OneDouble:
      return "one-double";
    case BinaryCubicShape::Triple:
      return "triple";
    case BinaryCubicShape::Zero:
      return "zero";
  }
  return "?";
}

template <class S>
BinaryCubicShape binary_cubic_shape(const Polynomial<S>& c, const std::string& u, const std::string& v) {
  for (const auto& w : c.used_variables())
    if (w != u && w != v) throw std::invalid_argument("binary cubic in unexpected variable " + w);
  if (!c.is_homogeneous(3)) throw std::invalid_argument("binary cubic must be homogeneous of degree 3");
  auto coeff = [&](int i, int j) {
    Polynomial<S> m = c.with_variables({u, v});
    Exponents e(m.variables().size(), 0);
    e[m.variable_index(u)] = i;
    e[m.variable_index(v)] = j;
    auto it = m.terms().find(e);
    return it == m.terms().end() ? S(0) : it->second;
  };
  // c = p u^3 + q u^2 v + r u v^2 + s v^3
  S p = coeff(3, 0), q = coeff(2, 1), r = coeff(1, 2), s = coeff(0, 3);
  if (decide_zero(p) && decide_zero(q) && decide_zero(r) && decide_zero(s)) return BinaryCubicShape::Zero;
  S disc = q * q * r * r - S(4) * p * r * r * r - S(4) * q * q * q * s - S(27) * p * p * s * s + S(18) * p * q * r * s;
  if (!decide_zero(disc)) return BinaryCubicShape::ThreeDistinct;
  // Hessian covariant vanishes exactly for cubes of linear forms
  S h0 = q * q - S(3) * p * r, h1 = q * r - S(9) * p * s, h2 = r * r - S(3) * q * s;
  if (decide_zero(h0) && decide_zero(h1) && decide_zero(h2)) return BinaryCubicShape::Triple;
  return BinaryCubicShape::OneDouble;
}

#define SINGFOLD_INSTANTIATE(S)                                                                          \
  template Polynomial<S> exact_divide(const Polynomial<S>&, const Polynomial<S>&);                      \
  template Polynomial<S> pseudo_remainder(const Polynomial<S>&, const Polynomial<S>&, const std::string&); \
  template Polynomial<S> reduce_modulo(const Polynomial<S>&, const Polynomial<S>&, const std::string&);  \
  template Polynomial<S> resultant(const Polynomial<S>&, const Polynomial<S>&, const std::string&);      \
  template Polynomial<S> gcd_univariate(const Polynomial<S>&, const Polynomial<S>&, const std::string&); \
  template BinaryCubicShape binary_cubic_shape(const Polynomial<S>&, const std::string&, const std::string&);

SINGFOLD_INSTANTIATE(Rational)
SINGFOLD_INSTANTIATE(AlgebraicScalar)

}  // namespace singfold
