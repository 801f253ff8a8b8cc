#include "singfold/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace singfold {

RootSystem::RootSystem(std::string type, std::vector<RootVector> simple, Matrix<Rational> form)
    : type_(std::move(type)), simple_(std::move(simple)), form_(std::move(form)) {
  const int r = rank();
  // close the simple roots under simple reflections, tracking coefficients
  std::deque<RootVector> queue;
  for (int i = 0; i < r; ++i) {
    std::vector<int> c(r, 0);
    c[i] = 1;
    index_.emplace(simple_[i], c);
    queue.push_back(simple_[i]);
  }
  while (!queue.empty()) {
    RootVector b = queue.front();
    queue.pop_front();
    std::vector<int> bc = index_.at(b);
    for (int i = 0; i < r; ++i) {
      Rational p = inner(b, simple_[i]);
      if (p == 0) continue;
      RootVector nb = b;
      for (std::size_t k = 0; k < nb.size(); ++k) nb[k] -= p * simple_[i][k];
      if (index_.count(nb)) continue;
      std::vector<int> nc = bc;
      nc[i] -= static_cast<int>(p.get_num().get_si());
      index_.emplace(nb, nc);
      queue.push_back(nb);
    }
  }
  for (const auto& [v, c] : index_) roots_.push_back(v);
}

std::vector<RootVector> RootSystem::positive_roots() const {
  std::vector<RootVector> out;
  for (const auto& v : roots_)
    if (is_positive(v)) out.push_back(v);
  return out;
}

const std::vector<int>& RootSystem::simple_coefficients(const RootVector& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw std::invalid_argument("not a root: " + root_to_string(v));
  return it->second;
}

bool RootSystem::is_positive(const RootVector& v) const {
  const auto& c = simple_coefficients(v);
  return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
}

Rational RootSystem::inner(const RootVector& a, const RootVector& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (form_[i][j] != 0) s += a[i] * form_[i][j] * b[j];
  }
  return s;
}

Matrix<int> RootSystem::cartan_matrix() const {
  Matrix<int> m(rank(), std::vector<int>(rank()));
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) m[i][j] = static_cast<int>(inner(simple_[i], simple_[j]).get_num().get_si());
  return m;
}

RootVector RootSystem::combination(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != rank()) throw std::invalid_argument("coefficient vector has wrong length");
  RootVector v(dimension(), Rational(0));
  for (int i = 0; i < rank(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += coeffs[i] * simple_[i][k];
  return v;
}

namespace {

RootVector unit(std::size_t n, std::initializer_list<std::pair<int, int>> entries) {
  RootVector v(n, Rational(0));
  for (auto [i, c] : entries) v[i - 1] = c;
  return v;
}

Matrix<Rational> identity(std::size_t n) {
  Matrix<Rational> m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RootSystem build_d(int n) {
  std::vector<RootVector> s;
  for (int i = 1; i < n; ++i) s.push_back(unit(n, {{i, 1}, {i + 1, -1}}));
  s.push_back(unit(n, {{n - 1, 1}, {n, 1}}));
  return RootSystem("D" + std::to_string(n), s, identity(n));
}

RootSystem build_e6() {
  // simple-root coordinates; the form is the Cartan matrix
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
  Matrix<Rational> cartan = identity(6);
  for (auto& row : cartan)
    for (auto& x : row) x *= 2;
  for (auto& e : edges) cartan[e[0] - 1][e[1] - 1] = cartan[e[1] - 1][e[0] - 1] = -1;
  std::vector<RootVector> s;
  for (int i = 1; i <= 6; ++i) s.push_back(unit(6, {{i, 1}}));
  return RootSystem("E6", s, cartan);
}

RootSystem build_e7() {
  const Rational h(1, 2);
  RootVector a1(8, Rational(0));
  a1[0] = h;
  a1[7] = h;
  for (int i = 1; i <= 6; ++i) a1[i] = -h;
  std::vector<RootVector> s = {a1, unit(8, {{1, 1}, {2, 1}})};
  for (int i = 1; i <= 5; ++i) s.push_back(unit(8, {{i + 1, 1}, {i, -1}}));
  return RootSystem("E7", s, identity(8));
}

}  // namespace

RootSystem build_root_system(const std::string& type) {
  if (type == "D4") return build_d(4);
  if (type == "D5") return build_d(5);
  if (type == "D6") return build_d(6);
  if (type == "E6") return build_e6();
  if (type == "E7") return build_e7();
  throw std::invalid_argument("unsupported root system type: " + type);
}

RootVector reflect(const RootVector& beta, const RootVector& alpha, const RootSystem& phi) {
  if (!phi.contains(beta) || !phi.contains(alpha)) throw std::invalid_argument("reflect: inputs must be roots");
  Rational p = phi.inner(beta, alpha);
  RootVector r = beta;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= p * alpha[k];
  return r;
}

Rational pairing(const RootVector& alpha, const std::vector<Rational>& h) {
  if (alpha.size() != h.size()) throw std::invalid_argument("pairing: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) s += alpha[i] * h[i];
  return s;
}

std::vector<RootVector> vanishing_set(const std::vector<Rational>& h, const RootSystem& phi) {
  if (h.size() != phi.dimension()) throw std::invalid_argument("vanishing_set: dimension mismatch");
  if (phi.type() == "E7" && h[6] + h[7] != 0) throw std::invalid_argument("vanishing_set: E7 point needs xi7 + xi8 = 0");
  std::vector<RootVector> out;
  for (const auto& a : phi.roots())
    if (pairing(a, h) == 0) out.push_back(a);
  return out;
}

const std::vector<std::string>& case_ids() {
  static const std::vector<std::string> ids = {"A3B2D4", "A5B3D5", "D4C3D6", "D4G2E6", "D4G2E7", "E6F4E7"};
  return ids;
}

CaseMeta case_meta(const std::string& id) {
  static const std::vector<CaseMeta> table = {
      {"A3B2D4", "A3", "C4", "D2", "Z/2", "B2", "D4", 2, {3, 4}},
      {"A5B3D5", "A5", "C6", "D3", "Z/2", "B3", "D5", 3, {4, 5}},
      {"D4C3D6", "D4", "D2", "D4", "Z/2", "C3", "D6", 3, {1, 3, 5}},
      {"D4G2E6", "D4", "D2", "T", "Z/3", "G2", "E6", 2, {1, 3, 5, 6}},
      {"D4G2E7", "D4", "D2", "O", "S3", "G2", "E7", 2, {1, 2, 3, 5, 7}},
      {"E6F4E7", "E6", "T", "O", "Z/2", "F4", "E7", 4, {2, 5, 7}},
  };
  for (const auto& m : table)
    if (m.id == id) return m;
  throw std::invalid_argument("unknown case id: " + id);
}

std::vector<RootVector> theta_roots(const CaseMeta& meta, const RootSystem& phi) {
  std::vector<RootVector> out;
  for (int i : meta.theta) out.push_back(phi.simple_roots().at(i - 1));
  return out;
}

std::string root_to_string(const RootVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace singfold
