#include <gtest/gtest.h>

#include <random>
#include <set>

#include "singfold/subsys.hpp"

using namespace singfold;

namespace {

// Bourbaki Cartan matrix assembled from the Dynkin edge list
Matrix<int> bourbaki_cartan(const std::string& type) {
  int n = std::stoi(type.substr(1));
  std::vector<std::pair<int, int>> edges;
  if (type[0] == 'D') {
    for (int i = 1; i < n - 1; ++i) edges.push_back({i, i + 1});
    edges.push_back({n - 2, n});
  } else {
    edges = {{1, 3}, {3, 4}, {4, 5}, {2, 4}};
    for (int i = 5; i < n; ++i) edges.push_back({i, i + 1});
  }
  Matrix<int> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  for (auto [a, b] : edges) c[a - 1][b - 1] = c[b - 1][a - 1] = -1;
  return c;
}

std::vector<Rational> qv(std::vector<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(RootSystem, CountsAndCartan) {
  std::map<std::string, std::size_t> want = {{"D4", 24}, {"D5", 40}, {"D6", 60}, {"E6", 72}, {"E7", 126}};
  for (const auto& [t, n] : want) {
    RootSystem phi = build_root_system(t);
    EXPECT_EQ(phi.roots().size(), n) << t;
    EXPECT_EQ(phi.positive_roots().size(), n / 2) << t;
    EXPECT_EQ(phi.cartan_matrix(), bourbaki_cartan(t)) << t;
    for (const auto& r : phi.roots()) EXPECT_EQ(phi.inner(r, r), 2);
  }
  EXPECT_THROW(build_root_system("B3"), std::invalid_argument);
}

TEST(RootSystem, ReflectionClosed) {
  for (std::string t : {"D4", "D5", "E6", "E7"}) {
    RootSystem phi = build_root_system(t);
    for (const auto& a : phi.roots())
      for (const auto& b : phi.roots()) ASSERT_TRUE(phi.contains(reflect(b, a, phi)));
  }
}

TEST(RootSystem, ReflectExamples) {
  RootSystem d4 = build_root_system("D4");
  const auto& s = d4.simple_roots();
  RootVector neg = s[0];
  for (auto& x : neg) x = -x;
  EXPECT_EQ(reflect(s[0], s[0], d4), neg);
  EXPECT_EQ(reflect(s[1], s[0], d4), d4.combination({1, 1, 0, 0}));
  EXPECT_EQ(reflect(reflect(s[2], s[1], d4), s[1], d4), s[2]);
  EXPECT_THROW(reflect(qv({1, 0, 0, 0}), s[0], d4), std::invalid_argument);
}

TEST(RootSystem, VanishingSet) {
  RootSystem d4 = build_root_system("D4");
  EXPECT_EQ(vanishing_set(qv({0, 0, 0, 0}), d4).size(), 24u);
  auto v = vanishing_set(qv({1, 2, 0, 0}), d4);
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(classify_subsystem(d4, v).to_string(), "A1+A1");
  auto w = vanishing_set(qv({1, 1, 0, 0}), d4);
  EXPECT_EQ(w.size(), 6u);
  EXPECT_THROW(vanishing_set(qv({1, 1}), d4), std::invalid_argument);
  // vanishing sets are reflection-closed
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(-2, 2);
  RootSystem e7 = build_root_system("E7");
  for (int k = 0; k < 30; ++k) {
    std::vector<int> h(8);
    for (auto& x : h) x = d(rng);
    h[7] = -h[6];
    auto s = vanishing_set(qv(h), e7);
    std::set<RootVector> ss(s.begin(), s.end());
    for (const auto& a : s)
      for (const auto& b : s) ASSERT_TRUE(ss.count(reflect(b, a, e7)));
  }
}

TEST(RootSystem, CaseMeta) {
  auto m = case_meta("A3B2D4");
  EXPECT_EQ(m.gamma, "C4");
  EXPECT_EQ(m.gamma_prime, "D2");
  EXPECT_EQ(m.omega, "Z/2");
  EXPECT_EQ(m.quotient_type, "D4");
  EXPECT_EQ(m.rank, 2);
  EXPECT_EQ(m.theta, (std::vector<int>{3, 4}));
  EXPECT_EQ(case_meta("D4G2E7").omega, "S3");
  EXPECT_EQ(case_meta("D4G2E7").theta, (std::vector<int>{1, 2, 3, 5, 7}));
  EXPECT_EQ(case_meta("E6F4E7").rank, 4);
  EXPECT_THROW(case_meta("X"), std::invalid_argument);
}

TEST(TypeMultiset, ParseAndOrder) {
  EXPECT_EQ(TypeMultiset::parse("A1+A1+A2").to_string(), "A2+A1+A1");
  EXPECT_EQ(TypeMultiset::parse("A1^3"), TypeMultiset::parse("A1+A1+A1"));
  EXPECT_EQ(TypeMultiset::parse("A1+D5").to_string(), "D5+A1");
  EXPECT_EQ(TypeMultiset::parse("E7").rank(), 7);
  EXPECT_TRUE(TypeMultiset::parse("").empty());
}

TEST(Subsys, CartanTypeRecognition) {
  for (std::string t : {"D4", "D5", "D6", "E6", "E7"}) EXPECT_EQ(cartan_type(bourbaki_cartan(t)), t);
  Matrix<int> a3 = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  EXPECT_EQ(cartan_type(a3), "A3");
  Matrix<int> cyc = {{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
  EXPECT_THROW(cartan_type(cyc), std::runtime_error);
}

TEST(Subsys, ClassifyExamples) {
  RootSystem d4 = build_root_system("D4");
  const auto& s = d4.simple_roots();
  EXPECT_EQ(classify_subsystem(d4, reflection_closure(d4, {s[2], s[3]})).to_string(), "A1+A1");
  EXPECT_EQ(classify_subsystem(d4, reflection_closure(d4, {s[1], s[2], s[3]})).to_string(), "A3");
  RootSystem e7 = build_root_system("E7");
  EXPECT_EQ(classify_subsystem(e7, e7.roots()).to_string(), "E7");
}

TEST(Subsys, EnumerationMaximalAndStable) {
  for (const auto& id : {"A3B2D4", "D4G2E6", "D4G2E7"}) {
    CaseMeta m = case_meta(id);
    RootSystem phi = build_root_system(m.quotient_type);
    auto theta = theta_roots(m, phi);
    auto subs = enumerate_subsystems(phi, theta);
    for (const auto& s : subs) {
      EXPECT_EQ(vanishing_set(s.witness, phi), s.roots);
      for (const auto& t : theta) EXPECT_TRUE(std::binary_search(s.roots.begin(), s.roots.end(), t));
    }
    // reversing theta does not change the result
    std::reverse(theta.begin(), theta.end());
    auto again = enumerate_subsystems(phi, theta);
    ASSERT_EQ(again.size(), subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) EXPECT_EQ(again[i].roots, subs[i].roots);
  }
}

TEST(Subsys, EnumerationCounts) {
  std::map<std::string, std::map<std::string, int>> want = {
      {"A3B2D4", {{"A1+A1", 1}, {"A1+A1+A1", 2}, {"A3", 2}, {"D4", 1}}},
      {"D4G2E6", {{"A2+A2", 1}, {"A2+A2+A1", 3}, {"A5", 3}, {"E6", 1}}},
      {"D4G2E7", {{"A2+A1+A1+A1", 1}, {"A3+A2+A1", 3}, {"D5+A1", 3}, {"E7", 1}}},
  };
  for (const auto& [id, counts] : want) {
    auto rep = match_realizations(id);
    EXPECT_EQ(rep.counts, counts) << id;
    EXPECT_TRUE(rep.ok()) << id << ": " << (rep.failures.empty() ? "" : rep.failures[0]);
  }
}

TEST(Subsys, ThetaClosureIsGenericType) {
  std::map<std::string, std::string> generic = {{"A3B2D4", "A1+A1"}, {"A5B3D5", "A1+A1"}, {"D4C3D6", "A1+A1+A1"},
                                                {"D4G2E6", "A2+A2"}, {"D4G2E7", "A2+A1+A1+A1"}, {"E6F4E7", "A1+A1+A1"}};
  for (const auto& [id, t] : generic) {
    CaseMeta m = case_meta(id);
    RootSystem phi = build_root_system(m.quotient_type);
    EXPECT_EQ(classify_subsystem(phi, span_closure(phi, theta_roots(m, phi))).to_string(), t) << id;
  }
}
