#include <algorithm>
#include <functional>
#include <stdexcept>

#include "singfold/families.hpp"

namespace singfold {

namespace {

using Vec = std::map<Exponents, Rational>;
using Combo = std::map<int, Rational>;

// Incremental echelon basis over Q that remembers how each row was built.
class Echelon {
 public:
  // reduces v and returns the residual; combo tracks the coefficients of the inputs
  Vec reduce(Vec v, Combo& combo) const {
    for (const auto& row : rows_) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      Rational f = it->second;
      for (const auto& [k, c] : row.v) {
        Rational& e = v[k];
        e -= f * c;
        if (sgn(e) == 0) v.erase(k);
      }
      for (const auto& [k, c] : row.combo) {
        Rational& e = combo[k];
        e -= f * c;
        if (sgn(e) == 0) combo.erase(k);
      }
    }
    return v;
  }
  // true if v was independent; the dependency combination is returned otherwise
  bool add(const Vec& v, int label, Combo* dependency = nullptr) {
    Combo combo{{label, 1}};
    Vec r = reduce(v, combo);
    if (r.empty()) {
      if (dependency) *dependency = combo;
      return false;
    }
    Exponents pivot = r.rbegin()->first;
    Rational inv = 1 / r.rbegin()->second;
    for (auto& [k, c] : r) c *= inv;
    for (auto& [k, c] : combo) c *= inv;
    // keep rows fully reduced against the new pivot
    for (auto& row : rows_) {
      auto it = row.v.find(pivot);
      if (it == row.v.end()) continue;
      Rational f = it->second;
      for (const auto& [k, c] : r) {
        Rational& e = row.v[k];
        e -= f * c;
        if (sgn(e) == 0) row.v.erase(k);
      }
      for (const auto& [k, c] : combo) {
        Rational& e = row.combo[k];
        e -= f * c;
        if (sgn(e) == 0) row.combo.erase(k);
      }
    }
    rows_.push_back({pivot, std::move(r), std::move(combo)});
    return true;
  }
  bool contains(const Vec& v) const {
    Combo c;
    return reduce(v, c).empty();
  }

 private:
  struct Row {
    Exponents pivot;
    Vec v;
    Combo combo;
  };
  std::vector<Row> rows_;
};

struct Context {
  QPoly fiber;
  std::string lead_var;
  std::vector<std::string> all_vars;
  std::map<std::string, int> weights;
  std::vector<std::string> params;

  QPoly normal_form(const QPoly& p) const { return reduce_modulo(p, fiber, lead_var); }
  Vec vec(const QPoly& p) const {
    Vec v;
    const QPoly nf = normal_form(p).with_variables(all_vars);
    for (const auto& [e, c] : nf.terms()) v[e] = c;
    return v;
  }
};

// exponent vectors over symbols with given weights summing to exactly d
void weighted_exponents(const std::vector<int>& w, int d, std::size_t i, Exponents& cur,
                        std::vector<Exponents>& out) {
  if (i == w.size()) {
    if (d == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * w[i] <= d; ++e) {
    cur[i] = e;
    weighted_exponents(w, d - e * w[i], i + 1, cur, out);
  }
  cur[i] = 0;
}

std::vector<Exponents> weighted_exponents(const std::vector<int>& w, int d) {
  std::vector<Exponents> out;
  Exponents cur(w.size(), 0);
  weighted_exponents(w, d, 0, cur, out);
  return out;
}

// monomials of weight d in parameters and named generators, as products of polynomials
struct MonomialSpace {
  std::vector<std::string> symbols;
  std::vector<QPoly> values;
  std::vector<int> weights;

  std::vector<std::pair<QPoly, QPoly>> at(int d) const {  // (symbolic monomial, value)
    std::vector<std::pair<QPoly, QPoly>> out;
    for (const auto& e : weighted_exponents(weights, d)) {
      QPoly m(1), v(1);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        m = m * var(symbols[i]).pow(e[i]);
        v = v * values[i].pow(e[i]);
      }
      out.push_back({m, v});
    }
    return out;
  }
};

// Reynolds images of monomials in the fiber variables, reduced below the leading power
std::vector<QPoly> invariant_spanning_set(const Context& ctx, const std::vector<AffineAction>& group,
                                          const std::vector<std::string>& fvars, int d) {
  const int lead_deg = ctx.fiber.degree_in(ctx.lead_var);
  std::vector<int> all_w;
  for (const auto& v : fvars) all_w.push_back(ctx.weights.at(v));
  for (const auto& p : ctx.params) all_w.push_back(ctx.weights.at(p));
  std::vector<QPoly> out;
  for (const auto& e : weighted_exponents(all_w, d)) {
    QPoly m(1), tm(1);
    bool skip = false;
    for (std::size_t i = 0; i < fvars.size(); ++i) {
      if (fvars[i] == ctx.lead_var && e[i] >= lead_deg) skip = true;
      m = m * var(fvars[i]).pow(e[i]);
    }
    if (skip) continue;
    for (std::size_t i = 0; i < ctx.params.size(); ++i) tm = tm * var(ctx.params[i]).pow(e[fvars.size() + i]);
    QPoly avg;
    for (const auto& g : group) avg += m.substitute(g.images);
    avg = avg.scaled(Rational(1, static_cast<long>(group.size())));
    QPoly nf = ctx.normal_form(tm * avg);
    if (!nf.is_zero()) out.push_back(nf);
  }
  return out;
}

Context make_context(const QPoly& fiber, const std::map<std::string, int>& weights) {
  Context ctx;
  ctx.fiber = fiber;
  ctx.weights = weights;
  for (const auto& v : {"z", "y", "x"}) {
    auto coeffs = fiber.coefficients_in(v);
    if (coeffs.size() > 1 && coeffs.back().is_constant()) {
      ctx.lead_var = v;
      break;
    }
  }
  if (ctx.lead_var.empty()) throw std::invalid_argument("fiber has no variable with constant leading coefficient");
  for (const auto& [v, w] : weights) {
    ctx.all_vars.push_back(v);
    if (v != "x" && v != "y" && v != "z") ctx.params.push_back(v);
  }
  std::sort(ctx.all_vars.begin(), ctx.all_vars.end(), symbol_less);
  std::sort(ctx.params.begin(), ctx.params.end(), symbol_less);
  return ctx;
}

}  // namespace

QuotientChart derive_invariants(const QPoly& fiber, const std::vector<AffineAction>& group,
                                const std::map<std::string, int>& weights, int degree_bound) {
  Context ctx = make_context(fiber, weights);
  const std::vector<std::string> fvars{"x", "y", "z"};
  QuotientChart chart;
  MonomialSpace space;
  for (const auto& p : ctx.params) {
    space.symbols.push_back(p);
    space.values.push_back(var(p));
    space.weights.push_back(weights.at(p));
  }
  // greedy minimal generators, weight by weight
  for (int d = 1; d <= degree_bound; ++d) {
    Echelon span;
    int label = 0;
    for (const auto& [m, v] : space.at(d)) span.add(ctx.vec(v), label++);
    for (const auto& inv : invariant_spanning_set(ctx, group, fvars, d)) {
      if (!span.add(ctx.vec(inv), label++)) continue;
      const std::string name = "g" + std::to_string(chart.auto_generators.size() + 1);
      chart.auto_generators.push_back({name, inv});
      chart.auto_weights.push_back(d);
      space.symbols.push_back(name);
      space.values.push_back(inv);
      space.weights.push_back(d);
    }
  }
  // lowest-weight relation among the generators
  for (int d = 1; d <= degree_bound && chart.auto_relation.is_zero(); ++d) {
    auto monomials = space.at(d);
    Echelon span;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      Combo dep;
      if (span.add(ctx.vec(monomials[i].second), static_cast<int>(i), &dep)) continue;
      QPoly rel;
      for (const auto& [k, c] : dep) rel += monomials[k].first.scaled(c);
      chart.auto_relation = rel;
      chart.relation_weight = d;
      break;
    }
  }
  return chart;
}

QuotientChart derive_quotient_chart(const std::string& case_id, int degree_bound) {
  const CaseDescriptor& d = descriptor(case_id);
  // weights of the paper generators and of the quotient equation
  std::map<std::string, int> qweights;
  for (const auto& p : d.parameters) qweights[p] = d.weights.at(p);
  for (const auto& g : d.quotient_generators) qweights[g.name] = g.poly.weighted_degree(d.weights);
  const int relation_weight = d.quotient.weighted_degree(qweights);
  if (degree_bound == 0) degree_bound = relation_weight;
  if (degree_bound < 6) throw std::invalid_argument("degree bound must be at least 6");

  auto group = group_elements(d);
  QuotientChart chart = derive_invariants(d.fiber, group, d.weights, degree_bound);
  CheckReport& r = chart.checks;
  Context ctx = make_context(d.fiber, d.weights);

  r.add("three generators", chart.auto_generators.size() == d.quotient_generators.size(),
        std::to_string(chart.auto_generators.size()) + " found up to weight " + std::to_string(degree_bound));
  r.add("relation found", !chart.auto_relation.is_zero(), "weight " + std::to_string(chart.relation_weight));
  r.add("relation weight", chart.relation_weight == relation_weight,
        std::to_string(chart.relation_weight) + " vs " + std::to_string(relation_weight));
  r.add("quotient equation weighted homogeneous", d.quotient.weighted_part(qweights, relation_weight) == d.quotient);

  // the paper generators are invariant and satisfy the paper relation
  for (const auto& g : d.quotient_generators) {
    bool inv = std::all_of(group.begin(), group.end(), [&](const AffineAction& a) {
      return ctx.normal_form(g.poly.substitute(a.images) - g.poly).is_zero();
    });
    r.add(g.name + " invariant", inv);
  }
  QPoly Q = d.quotient;
  for (const auto& g : d.quotient_generators) {
    if (g.sqrt_factor == 1) continue;
    int idx = Q.variable_index(g.name);
    QPoly::TermMap terms;
    bool even = true;
    for (const auto& [e, c] : Q.terms()) {
      if (idx >= 0 && e[idx] % 2) even = false;
      Rational f = c;
      for (int k = 0; idx >= 0 && k < e[idx] / 2; ++k) f *= g.sqrt_factor;
      terms[e] += f;
    }
    r.add("quotient equation even in " + g.name, even);
    Q = QPoly(Q.variables(), terms);
  }
  std::map<std::string, QPoly> paper_values;
  for (const auto& g : d.quotient_generators) paper_values[g.name] = g.poly;
  r.add("relation holds on the fiber", ctx.normal_form(Q.substitute(paper_values)).is_zero());

  // paper generators span every invariant up to the bound
  MonomialSpace paper;
  for (const auto& p : d.parameters) {
    paper.symbols.push_back(p);
    paper.values.push_back(var(p));
    paper.weights.push_back(d.weights.at(p));
  }
  for (const auto& g : d.quotient_generators) {
    paper.symbols.push_back(g.name);
    paper.values.push_back(g.poly);
    paper.weights.push_back(qweights.at(g.name));
  }
  bool generates = true;
  for (int w = 1; w <= degree_bound; ++w) {
    auto monomials = paper.at(w);
    Echelon span;
    for (std::size_t i = 0; i < monomials.size(); ++i) span.add(ctx.vec(monomials[i].second), static_cast<int>(i));
    for (const auto& inv : invariant_spanning_set(ctx, group, {"x", "y", "z"}, w))
      if (!span.contains(ctx.vec(inv))) generates = false;
    // express auto generators of this weight through the paper generators
    for (std::size_t k = 0; k < chart.auto_generators.size(); ++k) {
      if (chart.auto_weights[k] != w) continue;
      Combo combo;
      Vec res = span.reduce(ctx.vec(chart.auto_generators[k].second), combo);
      if (!res.empty()) {
        generates = false;
        continue;
      }
      QPoly expr;
      for (const auto& [i, c] : combo) expr += monomials[i].first.scaled(-c);
      chart.change[chart.auto_generators[k].first] = expr;
    }
  }
  r.add("paper generators span the invariants up to the bound", generates);

  // the derived relation, rewritten in the paper generators, is a multiple of the paper relation
  bool match = false;
  if (!chart.auto_relation.is_zero() && chart.change.size() == chart.auto_generators.size()) {
    QPoly rewritten = chart.auto_relation.substitute(chart.change);
    if (!rewritten.is_zero() && !Q.is_zero()) {
      std::vector<std::string> vars = Q.variables();
      for (const auto& v : rewritten.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
      std::sort(vars.begin(), vars.end(), symbol_less);
      const QPoly qa = Q.with_variables(vars), ra = rewritten.with_variables(vars);
      const auto& qt = qa.terms();
      const auto& rt = ra.terms();
      auto it = rt.find(qt.rbegin()->first);
      if (it != rt.end()) {
        chart.scalar = it->second / qt.rbegin()->second;
        match = rewritten == Q.scaled(chart.scalar);
      }
    }
  }
  r.add("derived relation matches the quotient equation", match,
        match ? "scalar " + chart.scalar.get_str() : std::string("no match"));
  return chart;
}

}  // namespace singfold
