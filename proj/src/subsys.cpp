#include "singfold/subsys.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace singfold {

int simple_type_rank(const std::string& t) {
  if (t.size() < 2 || (t[0] != 'A' && t[0] != 'D' && t[0] != 'E')) throw std::invalid_argument("bad simple type: " + t);
  return std::stoi(t.substr(1));
}

bool simple_type_less(const std::string& a, const std::string& b) {
  auto family = [](char c) { return c == 'E' ? 0 : c == 'D' ? 1 : 2; };
  if (family(a[0]) != family(b[0])) return family(a[0]) < family(b[0]);
  return simple_type_rank(a) > simple_type_rank(b);
}

TypeMultiset::TypeMultiset(std::vector<std::string> components) : components_(std::move(components)) {
  for (const auto& c : components_) simple_type_rank(c);
  std::sort(components_.begin(), components_.end(), simple_type_less);
}

TypeMultiset TypeMultiset::parse(const std::string& text) {
  std::vector<std::string> out;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return TypeMultiset();
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '+')) {
    int mult = 1;
    std::size_t i = 0;
    while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i]))) ++i;
    if (i > 0) {
      mult = std::stoi(part.substr(0, i));
      part = part.substr(i);
    }
    auto caret = part.find('^');
    if (caret != std::string::npos) {
      mult *= std::stoi(part.substr(caret + 1));
      part = part.substr(0, caret);
    }
    simple_type_rank(part);
    for (int k = 0; k < mult; ++k) out.push_back(part);
  }
  return TypeMultiset(out);
}

int TypeMultiset::rank() const {
  int r = 0;
  for (const auto& c : components_) r += simple_type_rank(c);
  return r;
}

std::string TypeMultiset::to_string() const {
  std::string s;
  for (const auto& c : components_) {
    if (!s.empty()) s += "+";
    s += c;
  }
  return s;
}

TypeMultiset TypeMultiset::operator+(const TypeMultiset& o) const {
  auto c = components_;
  c.insert(c.end(), o.components_.begin(), o.components_.end());
  return TypeMultiset(c);
}

bool operator<(const TypeMultiset& a, const TypeMultiset& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return std::lexicographical_compare(a.components_.begin(), a.components_.end(), b.components_.begin(),
                                      b.components_.end(), simple_type_less);
}

namespace {

// incremental echelon basis of a rational span
class Span {
 public:
  explicit Span(std::size_t dim) : dim_(dim) {}

  bool add(RootVector v) {
    reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) return false;
    std::size_t p = it - v.begin();
    Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (auto& row : rows_)
      if (row[p] != 0) {
        Rational f = row[p];
        for (std::size_t k = 0; k < dim_; ++k) row[k] -= f * v[k];
      }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  bool contains(RootVector v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(RootVector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v[pivots_[i]] == 0) continue;
      Rational f = v[pivots_[i]];
      for (std::size_t k = 0; k < dim_; ++k)
        if (rows_[i][k] != 0) v[k] -= f * rows_[i][k];
    }
  }

  std::size_t dim_;
  std::vector<RootVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<RootVector> flat_of(const RootSystem& phi, const Span& span) {
  std::vector<RootVector> out;
  for (const auto& r : phi.roots())
    if (span.contains(r)) out.push_back(r);
  return out;
}

Span span_of(const RootSystem& phi, const std::vector<RootVector>& vs) {
  Span s(phi.dimension());
  for (const auto& v : vs) s.add(v);
  return s;
}

std::vector<RootVector> simple_system(const RootSystem& phi, const std::vector<RootVector>& roots) {
  std::vector<RootVector> pos;
  for (const auto& r : roots)
    if (phi.is_positive(r)) pos.push_back(r);
  std::set<RootVector> posset(pos.begin(), pos.end());
  std::vector<RootVector> simple;
  for (const auto& r : pos) {
    bool decomposable = false;
    for (const auto& a : pos) {
      if (a == r) continue;
      RootVector d = r;
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= a[k];
      if (posset.count(d)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(r);
  }
  return simple;
}

std::vector<Rational> find_witness(const RootSystem& phi, const std::vector<RootVector>& simple,
                                   const std::vector<RootVector>& roots) {
  const std::size_t n = phi.dimension();
  Matrix<Rational> constraints = simple;
  if (phi.type() == "E7") {
    RootVector c(n, Rational(0));
    c[6] = c[7] = 1;
    constraints.push_back(c);
  }
  Matrix<Rational> basis = constraints.empty() ? Matrix<Rational>() : nullspace(constraints, n);
  if (constraints.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      RootVector e(n, Rational(0));
      e[i] = 1;
      basis.push_back(e);
    }
  }
  std::set<RootVector> inside(roots.begin(), roots.end());
  // parameters (1, b, b^2, ...) for growing b: every root outside the flat is a
  // nonzero polynomial in b along the kernel, so some b avoids all of them
  for (long b = 2; b < 10000; ++b) {
    std::vector<Rational> h(n, Rational(0));
    Rational coef = 1;
    for (const auto& v : basis) {
      for (std::size_t k = 0; k < n; ++k) h[k] += coef * v[k];
      coef *= b;
    }
    // clear denominators for a tidy integer witness
    Integer l = 1;
    for (const auto& x : h) l = lcm(l, x.get_den());
    for (auto& x : h) x *= l;
    bool ok = true;
    for (const auto& r : phi.roots())
      if (!inside.count(r) && pairing(r, h) == 0) {
        ok = false;
        break;
      }
    if (ok) return h;
  }
  throw std::runtime_error("witness search failed");
}

}  // namespace

std::string cartan_type(const Matrix<int>& c) {
  const int n = static_cast<int>(c.size());
  if (n == 0) throw std::invalid_argument("empty Cartan matrix");
  std::vector<std::vector<int>> adj(n);
  int edges = 0;
  for (int i = 0; i < n; ++i) {
    if (c[i][i] != 2) throw std::runtime_error("Cartan diagonal must be 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (c[i][j] != c[j][i] || (c[i][j] != 0 && c[i][j] != -1)) throw std::runtime_error("not simply laced");
      if (c[i][j] == -1) {
        adj[i].push_back(j);
        if (i < j) ++edges;
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::function<void(int)> dfs = [&](int v) {
    seen[v] = true;
    for (int w : adj[v])
      if (!seen[w]) dfs(w);
  };
  dfs(0);
  if (std::count(seen.begin(), seen.end(), false) || edges != n - 1) throw std::runtime_error("Cartan matrix is not a tree");
  int branch = -1;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() > 3) throw std::runtime_error("no simply-laced type matches");
    if (adj[i].size() == 3) {
      if (branch >= 0) throw std::runtime_error("no simply-laced type matches");
      branch = i;
    }
  }
  if (branch < 0) return "A" + std::to_string(n);
  std::vector<int> arms;
  for (int start : adj[branch]) {
    int len = 1, prev = branch, cur = start;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(n);
  throw std::runtime_error("no simply-laced type matches");
}

TypeMultiset classify_subsystem(const RootSystem& phi, const std::vector<RootVector>& roots) {
  std::vector<RootVector> simple = simple_system(phi, roots);
  const int n = static_cast<int>(simple.size());
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack = {i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && phi.inner(simple[v], simple[w]) != 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  std::vector<std::string> types;
  for (int k = 0; k < ncomp; ++k) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (comp[i] == k) idx.push_back(i);
    Matrix<int> c(idx.size(), std::vector<int>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b)
        c[a][b] = static_cast<int>(phi.inner(simple[idx[a]], simple[idx[b]]).get_num().get_si());
    types.push_back(cartan_type(c));
  }
  return TypeMultiset(types);
}

std::vector<RootVector> reflection_closure(const RootSystem& phi, const std::vector<RootVector>& generators) {
  std::set<RootVector> s;
  for (const auto& g : generators) {
    if (!phi.contains(g)) throw std::invalid_argument("generator is not a root: " + root_to_string(g));
    s.insert(g);
    RootVector m = g;
    for (auto& x : m) x = -x;
    s.insert(m);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<RootVector> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (s.insert(reflect(b, a, phi)).second) grew = true;
  }
  return {s.begin(), s.end()};
}

std::vector<RootVector> span_closure(const RootSystem& phi, const std::vector<RootVector>& generators) {
  return flat_of(phi, span_of(phi, generators));
}

std::string root_label(const RootSystem& phi, const RootVector& v) {
  const auto& c = phi.simple_coefficients(v);
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (c[i] < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    if (std::abs(c[i]) != 1) s += std::to_string(std::abs(c[i]));
    s += "a" + std::to_string(i + 1);
  }
  return s;
}

RootVector parse_root_label(const RootSystem& phi, const std::string& text) {
  std::vector<int> c(phi.rank(), 0);
  std::size_t i = 0;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    }
    int mult = 0;
    bool has = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mult = mult * 10 + (text[i++] - '0');
      has = true;
    }
    if (i >= text.size() || text[i] != 'a') throw std::invalid_argument("bad root label: " + text);
    ++i;
    int idx = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) idx = idx * 10 + (text[i++] - '0');
    if (idx < 1 || idx > phi.rank()) throw std::invalid_argument("bad root index in: " + text);
    c[idx - 1] += sign * (has ? mult : 1);
  }
  RootVector v = phi.combination(c);
  if (!phi.contains(v)) throw std::invalid_argument("not a root: " + text);
  return v;
}

std::vector<SubRootSystem> enumerate_subsystems(const RootSystem& phi, const std::vector<RootVector>& theta) {
  for (const auto& t : theta)
    if (!phi.contains(t)) throw std::invalid_argument("theta element is not a root");
  std::set<std::vector<RootVector>> seen;
  std::vector<std::vector<RootVector>> frontier;
  auto start = span_closure(phi, theta);
  seen.insert(start);
  frontier.push_back(start);
  const auto positives = phi.positive_roots();
  while (!frontier.empty()) {
    std::vector<std::vector<RootVector>> next;
    for (const auto& flat : frontier) {
      std::set<RootVector> in(flat.begin(), flat.end());
      Span base = span_of(phi, flat);
      for (const auto& b : positives) {
        if (in.count(b)) continue;
        Span s = base;
        s.add(b);
        auto f = flat_of(phi, s);
        if (seen.insert(f).second) next.push_back(f);
      }
    }
    frontier = std::move(next);
  }
  std::vector<SubRootSystem> out;
  for (const auto& roots : seen) {
    SubRootSystem s;
    s.roots = roots;
    s.simple = simple_system(phi, roots);
    s.rank = static_cast<int>(s.simple.size());
    s.type = classify_subsystem(phi, roots);
    s.witness = find_witness(phi, s.simple, roots);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const SubRootSystem& a, const SubRootSystem& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.type != b.type) return a.type < b.type;
    return a.roots < b.roots;
  });
  return out;
}

namespace {

struct RealizationTable {
  int expected_count;
  std::vector<std::string> expected_types;
  std::vector<std::pair<std::string, std::vector<std::string>>> sets;  // type, generators
  std::map<std::string, int> known_omissions;
};

const RealizationTable& realization_table(const std::string& id) {
  static const std::map<std::string, RealizationTable> tables = {
      {"A3B2D4",
       {6,
        {"A1+A1", "A1+A1+A1", "A3", "D4"},
        {{"A1+A1", {"a3", "a4"}},
         {"A1+A1+A1", {"a1", "a3", "a4"}},
         {"A1+A1+A1", {"a1+2a2+a3+a4", "a3", "a4"}},
         {"A3", {"a2", "a3", "a4"}},
         {"A3", {"a1+a2", "a3", "a4"}},
         {"D4", {"a1", "a2", "a3", "a4"}}},
        {}}},
      {"A5B3D5",
       {24,
        {"A1+A1", "A1+A1+A1", "A3", "A2+A1+A1", "A3+A1", "D4", "D5"},
        {{"A1+A1", {"a4", "a5"}},
         {"A1+A1+A1", {"a1", "a4", "a5"}},
         {"A1+A1+A1", {"a2", "a4", "a5"}},
         {"A1+A1+A1", {"a1+a2", "a4", "a5"}},
         {"A1+A1+A1", {"a1+2a2+2a3+a4+a5", "a4", "a5"}},
         {"A1+A1+A1", {"a1+a2+2a3+a4+a5", "a4", "a5"}},
         {"A1+A1+A1", {"a2+2a3+a4+a5", "a4", "a5"}},
         {"A3", {"a3", "a4", "a5"}},
         {"A3", {"a2+a3", "a4", "a5"}},
         {"A3", {"a1+a2+a3", "a4", "a5"}},
         {"A2+A1+A1", {"a1", "a2", "a4", "a5"}},
         {"A2+A1+A1", {"a1", "a2+2a3+a4+a5", "a4", "a5"}},
         {"A2+A1+A1", {"a2", "a1+a2+2a3+a4+a5", "a4", "a5"}},
         {"A2+A1+A1", {"a1+a2", "a2+2a3+a4+a5", "a4", "a5"}},
         {"A3+A1", {"a1", "a3", "a4", "a5"}},
         {"A3+A1", {"a1+a2", "a2+a3", "a4", "a5"}},
         {"A3+A1", {"a1+2a2+2a3+a4+a5", "a3", "a4", "a5"}},
         {"A3+A1", {"a1+a2+2a3+a4+a5", "a2+a3", "a4", "a5"}},
         {"A3+A1", {"a1+a2+a3", "a2", "a4", "a5"}},
         {"A3+A1", {"a1+a2+a3", "a2+2a3+a4+a5", "a4", "a5"}},
         {"D4", {"a2", "a3", "a4", "a5"}},
         {"D4", {"a1+a2", "a3", "a4", "a5"}},
         {"D4", {"a1", "a2+a3", "a4", "a5"}},
         {"D5", {"a1", "a2", "a3", "a4", "a5"}}},
        {}}},
      {"D4C3D6",
       {24,
        {"A1+A1+A1", "A1+A1+A1+A1", "A3+A1", "A3+A1+A1", "D4+A1", "A5", "D6"},
        {{"A1+A1+A1", {"a1", "a3", "a5"}},
         {"A1+A1+A1+A1", {"a1", "a3", "a5", "a6"}},
         {"A1+A1+A1+A1", {"a1", "a3", "a5", "a1+2a2+2a3+2a4+a5+a6"}},
         {"A1+A1+A1+A1", {"a1", "a3", "a5", "a3+2a4+a5+a6"}},
         {"A3+A1", {"a1", "a3", "a5", "a2"}},
         {"A3+A1", {"a1", "a3", "a5", "a4"}},
         {"A3+A1", {"a1", "a3", "a5", "a2+a3+a4"}},
         {"A3+A1", {"a1", "a3", "a5", "a2+a3+a4+a6"}},
         {"A3+A1", {"a1", "a3", "a5", "a4+a6"}},
         {"A3+A1", {"a1", "a3", "a5", "a2+a3+2a4+a5+a6"}},
         {"A3+A1+A1", {"a1", "a3", "a5", "a2", "a6"}},
         {"A3+A1+A1", {"a1", "a3", "a5", "a4", "a1+2a2+2a3+2a4+a5+a6"}},
         {"A3+A1+A1", {"a1", "a3", "a5", "a2+a3+a4", "a3+2a4+a5+a6"}},
         {"A3+A1+A1", {"a1", "a3", "a5", "a2+a3+a4+a6", "a3+2a4+a5+a6"}},
         {"A3+A1+A1", {"a1", "a3", "a5", "a4+a6", "a1+2a2+2a3+2a4+a5+a6"}},
         {"A3+A1+A1", {"a1", "a3", "a5", "a2+a3+2a4+a5+a6", "a6"}},
         {"D4+A1", {"a1", "a3", "a5", "a2", "a3+2a4+a5+a6"}},
         {"D4+A1", {"a1", "a3", "a5", "a4", "a6"}},
         {"D4+A1", {"a1", "a3", "a5", "a2+a3+a4", "a6"}},
         {"A5", {"a1", "a3", "a5", "a2", "a4"}},
         {"A5", {"a1", "a3", "a5", "a2+a3+a4+a6", "a4"}},
         {"A5", {"a1", "a3", "a5", "a2", "a4+a6"}},
         {"A5", {"a1", "a3", "a5", "a4+a6", "a2+a3+a4"}},
         {"D6", {"a1", "a2", "a3", "a4", "a5", "a6"}}},
        {}}},
      {"D4G2E6",
       {8,
        {"A2+A2", "A2+A2+A1", "A5", "E6"},
        {{"A2+A2", {"a1", "a3", "a5", "a6"}},
         {"A2+A2+A1", {"a1", "a3", "a5", "a6", "a2"}},
         {"A2+A2+A1", {"a1", "a3", "a5", "a6", "a1+a2+2a3+3a4+2a5+a6"}},
         {"A2+A2+A1", {"a1", "a3", "a5", "a6", "a1+2a2+2a3+3a4+2a5+a6"}},
         {"A5", {"a1", "a3", "a5", "a6", "a4"}},
         {"A5", {"a1", "a3", "a5", "a6", "a2+a4"}},
         {"A5", {"a1", "a3", "a5", "a6", "a2+a3+2a4+a5"}},
         {"E6", {"a1", "a2", "a3", "a4", "a5", "a6"}}},
        {}}},
      {"D4G2E7",
       {8,
        {"A2+A1+A1+A1", "A3+A2+A1", "D5+A1", "E7"},
        {{"A2+A1+A1+A1", {"a1", "a2", "a3", "a5", "a7"}},
         {"A3+A2+A1", {"a1", "a2", "a3", "a5", "a7", "a6"}},
         {"A3+A2+A1", {"a1", "a2", "a3", "a5", "a7", "a1+a2+2a3+3a4+2a5+2a6+a7"}},
         {"D5+A1", {"a1", "a2", "a3", "a5", "a7", "a4"}},
         {"D5+A1", {"a1", "a2", "a3", "a5", "a7", "a4+a5+a6"}},
         {"D5+A1", {"a1", "a2", "a3", "a5", "a7", "a2+a3+2a4+a5+a6"}},
         {"E7", {"a1", "a2", "a3", "a4", "a5", "a6", "a7"}}},
        // the printed table lists two of the three A3+A2+A1 realizations
        {{"A3+A2+A1", 1}}}},
      {"E6F4E7",
       {268,
        {"A1+A1+A1", "A3+A1", "D4+A1", "D5+A1", "D6", "A5", "A1+A1+A1+A1", "A2+A1+A1+A1", "A3+A1+A1", "A3+A2+A1",
         "A5+A1", "E7"},
        {},
        {}}},
  };
  auto it = tables.find(id);
  if (it == tables.end()) throw std::invalid_argument("unknown case id: " + id);
  return it->second;
}

}  // namespace

RealizationReport match_realizations(const std::string& case_id) {
  CaseMeta meta = case_meta(case_id);
  RootSystem phi = build_root_system(meta.quotient_type);
  const RealizationTable& table = realization_table(case_id);
  RealizationReport rep;
  rep.case_id = case_id;
  rep.subsystems = enumerate_subsystems(phi, theta_roots(meta, phi));
  rep.expected_count = table.expected_count;
  rep.expected_types = table.expected_types;
  rep.paper_table_available = !table.sets.empty();
  for (const auto& s : rep.subsystems) ++rep.counts[s.type.to_string()];

  if (static_cast<int>(rep.subsystems.size()) != table.expected_count)
    rep.failures.push_back("enumeration size " + std::to_string(rep.subsystems.size()) + " != " +
                           std::to_string(table.expected_count));
  std::set<std::string> want, got;
  for (const auto& t : table.expected_types) want.insert(TypeMultiset::parse(t).to_string());
  for (const auto& [t, n] : rep.counts) got.insert(t);
  if (want != got) rep.failures.push_back("type census differs from the configuration table");

  std::vector<int> used(rep.subsystems.size(), 0);
  for (const auto& [type, gens] : table.sets) {
    RealizationEntry e;
    e.paper_type = TypeMultiset::parse(type).to_string();
    e.generators = gens;
    std::vector<RootVector> g;
    for (const auto& label : gens) g.push_back(parse_root_label(phi, label));
    auto closure = reflection_closure(phi, g);
    e.closure_type = classify_subsystem(phi, closure);
    for (std::size_t i = 0; i < rep.subsystems.size(); ++i)
      if (rep.subsystems[i].roots == closure) e.matched = static_cast<int>(i);
    std::string where = "<" + [&] {
      std::string s;
      for (const auto& x : gens) s += (s.empty() ? "" : ",") + x;
      return s;
    }() + ">";
    if (e.matched < 0)
      rep.failures.push_back("closure of " + where + " is not an enumerated subsystem");
    else if (used[e.matched]++)
      rep.failures.push_back("closure of " + where + " duplicates another realization");
    if (e.closure_type.to_string() != e.paper_type)
      rep.failures.push_back("closure of " + where + " has type " + e.closure_type.to_string() + ", table says " +
                             e.paper_type);
    rep.entries.push_back(std::move(e));
  }
  if (rep.paper_table_available) {
    std::map<std::string, int> missing;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i]) {
        rep.unmatched.push_back(static_cast<int>(i));
        ++missing[rep.subsystems[i].type.to_string()];
      }
    std::map<std::string, int> allowed;
    for (const auto& [t, n] : table.known_omissions) allowed[TypeMultiset::parse(t).to_string()] = n;
    if (missing != allowed) rep.failures.push_back("enumerated subsystems without a printed realization differ from the known omissions");
  }
  return rep;
}

}  // namespace singfold
