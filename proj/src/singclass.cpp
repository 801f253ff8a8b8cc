#include "singfold/singclass.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace singfold {

namespace {

const char* kShear = "shear_s";

UPoly to_upoly(const QPoly& p, const std::string& v) {
  for (const auto& u : p.used_variables())
    if (u != v) throw std::logic_error("expected a univariate polynomial in " + v);
  std::vector<Rational> c;
  for (const auto& k : p.coefficients_in(v)) c.push_back(k.constant_term());
  return UPoly(c);
}

KPoly evaluate_k(const QPoly& f, const std::map<std::string, AlgebraicScalar>& values) {
  return lift(f).evaluate(values).pruned();
}

bool decide_zero_poly(const KPoly& p) {
  for (const auto& [e, c] : p.terms())
    if (!decide_zero(c)) return false;
  return true;
}

// squarefree part of a univariate polynomial over an extension ring
KPoly squarefree_k(const KPoly& g, const std::string& v) {
  if (g.degree_in(v) <= 0) return g;
  KPoly d = gcd_univariate(g, g.differentiate(v), v);
  return exact_divide(g, d).with_variables({v});
}

using Partial = std::map<std::string, AlgebraicScalar>;
struct Branch {
  RingPtr ring;
  Partial values;
};

struct ShearFailed {};

std::vector<Branch> solve_bivariate(const std::vector<QPoly>& eqs, const std::string& a, const std::string& b) {
  static const int shears[] = {0, 1, -1, 2, -2, 3, -3, 5, -5, 7, 11, -13};
  for (int lambda : shears) {
    std::vector<QPoly> g;
    for (const auto& e : eqs) {
      QPoly s = e.substitute({{a, var(kShear) + var(b).scaled(lambda)}});
      if (!s.is_zero()) g.push_back(s);
    }
    // eliminate b
    UPoly r;
    bool any = false;
    auto absorb = [&](const QPoly& p) {
      if (p.is_zero()) return;
      UPoly u = to_upoly(p.pruned().with_variables({kShear}), kShear);
      r = any ? gcd(r, u) : u;
      any = true;
    };
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i].degree_in(b) == 0) absorb(g[i]);
      for (std::size_t j = i + 1; j < g.size(); ++j)
        if (g[i].degree_in(b) > 0 && g[j].degree_in(b) > 0) absorb(resultant(g[i], g[j], b));
    }
    if (!any) throw SingularityError("singular locus is not isolated (all eliminants vanish)");
    if (r.degree() <= 0) return {};
    std::vector<Branch> out;
    std::deque<RingPtr> queue = {make_extension(r, kShear)};
    try {
      while (!queue.empty()) {
        RingPtr ring = queue.front();
        queue.pop_front();
        AlgebraicScalar sigma = AlgebraicScalar::generator(ring);
        try {
          std::vector<KPoly> kg;
          for (const auto& p : g) {
            KPoly k = evaluate_k(p, {{kShear, sigma}});
            if (!decide_zero_poly(k)) kg.push_back(k.with_variables({b}));
          }
          if (kg.empty()) throw SingularityError("singular locus is not isolated (a whole line is singular)");
          KPoly h = kg[0];
          for (std::size_t i = 1; i < kg.size(); ++i) h = gcd_univariate(h, kg[i], b);
          if (kg.size() == 1) h = gcd_univariate(h, h, b);
          KPoly sq = squarefree_k(h, b);
          int d = sq.degree_in(b);
          if (d <= 0) continue;
          if (d >= 2) throw ShearFailed{};
          auto coeffs = sq.coefficients_in(b);
          AlgebraicScalar bv = -(coeffs[0].constant_term() * inverse(coeffs[1].constant_term()));
          AlgebraicScalar av = sigma + AlgebraicScalar(lambda) * bv;
          out.push_back({ring, {{a, av}, {b, bv}}});
        } catch (SplitException& e) {
          queue.push_back(make_extension(e.event.factor_a, kShear));
          queue.push_back(make_extension(e.event.factor_b, kShear));
        }
      }
    } catch (ShearFailed&) {
      continue;
    }
    return out;
  }
  throw SingularityError("no separating shear found");
}

// column layout of monomials of degree < N, graded
struct MonomialIndex {
  std::vector<Exponents> list;
  std::map<Exponents, int> index;
  MonomialIndex(std::size_t n, int N) {
    for (int d = 0; d < N; ++d) {
      Exponents e(n, 0);
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == n) {
          e[i] = left;
          index.emplace(e, static_cast<int>(list.size()));
          list.push_back(e);
          return;
        }
        for (int k = left; k >= 0; --k) {
          e[i] = k;
          rec(i + 1, left - k);
        }
      };
      if (n == 0) {
        if (d == 0) {
          index.emplace(e, 0);
          list.push_back(e);
        }
      } else {
        rec(0, d);
      }
    }
  }
};

int total(const Exponents& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

KPoly translated(const QPoly& F, const SingularPoint& p) {
  std::map<std::string, KPoly> shift;
  for (std::size_t i = 0; i < p.variables.size(); ++i)
    shift.emplace(p.variables[i], lift(var(p.variables[i])) + KPoly(p.coordinates[i]));
  return lift(F).substitute(shift).with_variables(p.variables);
}

int local_algebra_dimension(const std::vector<KPoly>& partials, std::size_t n, int N) {
  MonomialIndex mons(n, N);
  using Row = std::map<int, AlgebraicScalar>;
  std::map<int, Row> pivots;
  for (const auto& m : mons.list) {
    int dm = total(m);
    if (dm > N - 2) break;
    for (const auto& d : partials) {
      Row row;
      for (const auto& [e, c] : d.terms()) {
        Exponents f = e;
        for (std::size_t i = 0; i < n; ++i) f[i] += m[i];
        if (total(f) >= N) continue;
        row[mons.index.at(f)] += c;
      }
      while (!row.empty()) {
        auto lead = row.begin();
        if (is_zero(lead->second)) {
          row.erase(lead);
          continue;
        }
        auto it = pivots.find(lead->first);
        if (it == pivots.end()) {
          if (decide_zero(lead->second)) {
            row.erase(lead);
            continue;
          }
          AlgebraicScalar inv = inverse(lead->second);
          for (auto& [k, v] : row) v = v * inv;
          pivots.emplace(lead->first, std::move(row));
          break;
        }
        AlgebraicScalar f = lead->second;
        for (const auto& [k, v] : it->second) {
          auto& slot = row[k];
          slot = slot - f * v;
          if (is_zero(slot)) row.erase(k);
        }
      }
    }
  }
  return static_cast<int>(mons.list.size() - pivots.size());
}

std::vector<KPoly> partials_of(const KPoly& f, const std::vector<std::string>& vars) {
  std::vector<KPoly> out;
  for (const auto& v : vars) out.push_back(f.differentiate(v));
  return out;
}

}  // namespace

AlgebraicScalar evaluate_at(const QPoly& f, const SingularPoint& p) {
  std::map<std::string, AlgebraicScalar> values;
  for (std::size_t i = 0; i < p.variables.size(); ++i) values.emplace(p.variables[i], p.coordinates[i]);
  KPoly k = lift(f).evaluate(values);
  if (!k.used_variables().empty()) throw std::invalid_argument("evaluate_at: polynomial has unbound variables");
  AlgebraicScalar c = k.constant_term();
  return c.ring() ? c : AlgebraicScalar(p.ring, c.value());
}

SingularPoint reduce_point(const SingularPoint& p, const RingPtr& factor_ring) {
  SingularPoint q{factor_ring, p.variables, {}};
  for (const auto& c : p.coordinates) q.coordinates.push_back(reduce_to(c, factor_ring));
  return q;
}

std::vector<SingularPoint> singular_points(const QPoly& F, std::vector<std::string> variables) {
  if (variables.empty()) variables = F.used_variables();
  std::sort(variables.begin(), variables.end(), symbol_less);
  if (variables.size() > 3) throw SingularityError("more than three variables");
  for (const auto& u : F.used_variables())
    if (!std::binary_search(variables.begin(), variables.end(), u, symbol_less))
      throw std::invalid_argument("polynomial uses variable outside the surface coordinates: " + u);
  QPoly G = F.with_variables(variables);
  std::vector<QPoly> eqs = {G};
  for (const auto& v : variables) eqs.push_back(G.differentiate(v));

  // eliminate variables that some equation determines linearly
  std::vector<std::pair<std::string, QPoly>> elim;
  std::vector<std::string> rest = variables;
  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& e : eqs) {
      for (const auto& v : rest) {
        if (e.degree_in(v) != 1) continue;
        auto c = e.coefficients_in(v);
        if (!c[1].is_constant()) continue;
        QPoly expr = c[0].scaled(-inverse(c[1].constant_term()));
        for (auto& x : eqs) x = x.substitute({{v, expr}});
        elim.emplace_back(v, expr);
        rest.erase(std::find(rest.begin(), rest.end(), v));
        progress = true;
        break;
      }
      if (progress) break;
    }
    eqs.erase(std::remove_if(eqs.begin(), eqs.end(), [](const QPoly& q) { return q.is_zero(); }), eqs.end());
  }

  std::vector<Branch> branches;
  if (rest.empty()) {
    if (eqs.empty()) branches.push_back({rational_ring(), {}});
  } else if (rest.size() == 1) {
    if (eqs.empty()) throw SingularityError("singular locus is not isolated");
    UPoly g;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      UPoly u = to_upoly(eqs[i].pruned().with_variables({rest[0]}), rest[0]);
      g = i ? gcd(g, u) : u;
    }
    if (g.degree() > 0) {
      RingPtr ring = make_extension(g, rest[0]);
      branches.push_back({ring, {{rest[0], AlgebraicScalar::generator(ring)}}});
    }
  } else if (rest.size() == 2) {
    if (eqs.empty()) throw SingularityError("singular locus is not isolated");
    branches = solve_bivariate(eqs, rest[0], rest[1]);
  } else {
    throw SingularityError("no linear elimination available; system in three variables is not supported");
  }

  std::vector<SingularPoint> out;
  for (auto& br : branches) {
    for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
      KPoly k = evaluate_k(it->second, br.values);
      AlgebraicScalar v = k.constant_term();
      br.values[it->first] = v.ring() ? v : AlgebraicScalar(br.ring, v.value());
    }
    SingularPoint p{br.ring, variables, {}};
    for (const auto& v : variables) {
      AlgebraicScalar c = br.values.at(v);
      p.coordinates.push_back(c.ring() ? c : AlgebraicScalar(br.ring, c.value()));
    }
    out.push_back(std::move(p));
  }
  return out;
}

int truncated_milnor(const QPoly& F, const SingularPoint& p, int N) {
  KPoly f = translated(F, p);
  return local_algebra_dimension(partials_of(f, p.variables), p.variables.size(), N);
}

int milnor_number(const QPoly& F, const SingularPoint& p) {
  KPoly f = translated(F, p);
  auto d = partials_of(f, p.variables);
  const std::size_t n = p.variables.size();
  int prev = local_algebra_dimension(d, n, 4);
  for (int N = 5; N <= 16; ++N) {
    int cur = local_algebra_dimension(d, n, N);
    // equal consecutive truncations force m^N into the Jacobian ideal
    if (cur == prev) {
      if (cur == 0) throw std::invalid_argument("not a singular point");
      return cur;
    }
    prev = cur;
  }
  throw SingularityError("Milnor number did not stabilise by degree 16");
}

namespace {

Matrix<AlgebraicScalar> hessian_at(const KPoly& f, const std::vector<std::string>& vars) {
  const std::size_t n = vars.size();
  Matrix<AlgebraicScalar> h(n, std::vector<AlgebraicScalar>(n));
  Exponents zero(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = f.differentiate(vars[i]).differentiate(vars[j]).constant_term();
  return h;
}

}  // namespace

int hessian_corank(const QPoly& F, const SingularPoint& p) {
  KPoly f = translated(F, p);
  return static_cast<int>(p.variables.size()) - rref(hessian_at(f, p.variables)).rank;
}

SingularPointRecord classify_point(const QPoly& F, const SingularPoint& p) {
  SingularPointRecord rec;
  rec.point = p;
  for (const auto& d : partials_of(translated(F, p), p.variables))
    if (!decide_zero(d.constant_term())) throw std::invalid_argument("not a singular point");
  if (!decide_zero(evaluate_at(F, p))) throw std::invalid_argument("point does not lie on the surface");
  rec.milnor = milnor_number(F, p);
  if (rec.milnor > 8) throw SingularityError("Milnor number " + std::to_string(rec.milnor) + " is outside the ADE range");
  KPoly f = translated(F, p);
  auto hess = hessian_at(f, p.variables);
  const int n = static_cast<int>(p.variables.size());
  rec.corank = n - rref(hess).rank;
  if (rec.corank <= 1) {
    if (rec.corank == 0 && rec.milnor != 1) throw SingularityError("nondegenerate point with mu > 1");
    rec.type = "A" + std::to_string(rec.milnor);
    return rec;
  }
  if (rec.corank > 2) throw SingularityError("corank 3 point is not simple");
  auto kernel = nullspace(hess, n);
  KPoly cubic3 = f.homogeneous_part(3);
  std::map<std::string, KPoly> plane;
  for (int i = 0; i < n; ++i)
    plane.emplace(p.variables[i], lift(var("k_1")).scaled(kernel[0][i]) + lift(var("k_2")).scaled(kernel[1][i]));
  KPoly c = cubic3.substitute(plane).pruned();
  rec.cubic_shape = binary_cubic_shape(c, "k_1", "k_2");
  switch (*rec.cubic_shape) {
    case BinaryCubicShape::ThreeDistinct:
      if (rec.milnor != 4) throw SingularityError("three-line cubic with mu != 4");
      rec.type = "D4";
      break;
    case BinaryCubicShape::OneDouble:
      if (rec.milnor < 5) throw SingularityError("D-type cubic with mu < 5");
      rec.type = "D" + std::to_string(rec.milnor);
      break;
    case BinaryCubicShape::Triple:
      if (rec.milnor < 6 || rec.milnor > 8) throw SingularityError("triple-line cubic with mu outside 6..8");
      rec.type = "E" + std::to_string(rec.milnor);
      break;
    case BinaryCubicShape::Zero:
      throw SingularityError("vanishing cubic term: not a simple singularity");
  }
  return rec;
}

std::vector<SingularPointRecord> classify_branch(const QPoly& F, const SingularPoint& p) {
  std::vector<SingularPointRecord> out;
  std::deque<SingularPoint> queue = {p};
  while (!queue.empty()) {
    SingularPoint q = queue.front();
    queue.pop_front();
    try {
      out.push_back(classify_point(F, q));
    } catch (SplitException& e) {
      const std::string& gen = q.ring->generator();
      queue.push_back(reduce_point(q, make_extension(e.event.factor_a, gen)));
      queue.push_back(reduce_point(q, make_extension(e.event.factor_b, gen)));
    }
  }
  return out;
}

FiberConfiguration fiber_configuration(const QPoly& F, std::vector<std::string> variables) {
  FiberConfiguration cfg;
  std::vector<std::string> types;
  for (const auto& p : singular_points(F, std::move(variables)))
    for (auto& rec : classify_branch(F, p)) {
      for (int k = 0; k < rec.orbit_size(); ++k) types.push_back(rec.type);
      cfg.points.push_back(std::move(rec));
    }
  cfg.type = TypeMultiset(types);
  return cfg;
}

}  // namespace singfold
