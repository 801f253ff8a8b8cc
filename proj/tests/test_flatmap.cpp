#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "singfold/flatmap.hpp"

using namespace singfold;

namespace {

const std::vector<std::string> kWithFormulas = {"A3B2D4", "A5B3D5", "D4C3D6", "D4G2E6", "D4G2E7"};

std::vector<Rational> evaluate_psi(const FlatChart& c, const std::vector<Rational>& xi) {
  std::map<std::string, QPoly> at;
  for (std::size_t j = 0; j < xi.size(); ++j) at[c.xi_symbols[j]] = QPoly(xi[j]);
  std::vector<Rational> out;
  for (const auto& f : c.psi) out.push_back(f.substitute(at).constant_term());
  return out;
}

std::vector<Rational> embed(const FlatChart& c, const std::vector<Rational>& xi) {
  std::map<std::string, QPoly> at;
  for (std::size_t j = 0; j < xi.size(); ++j) at[c.xi_symbols[j]] = QPoly(xi[j]);
  std::vector<Rational> h;
  for (const auto& e : c.embedding) h.push_back(e.substitute(at).constant_term());
  return h;
}

std::vector<Rational> random_xi(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> xi(n);
  for (auto& x : xi) {
    x = Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3));
    x.canonicalize();
  }
  return xi;
}

std::vector<Rational> qv(std::vector<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Flatmap, RelationsVanish) {
  std::size_t relations = 0;
  for (const auto& id : case_ids()) {
    CheckReport r = verify_flat_relations(id);
    EXPECT_TRUE(r.ok()) << id;
    relations += flat_chart(id).relations.size();
  }
  EXPECT_EQ(flat_chart("D4C3D6").relations.size(), 3u);
  EXPECT_EQ(flat_chart("D4G2E7").relations.size(), 5u);
  EXPECT_EQ(flat_chart("E6F4E7").relations.size(), 3u);
  EXPECT_EQ(relations, 15u);
}

TEST(Flatmap, RelationsHoldPointwise) {
  std::mt19937_64 rng(5);
  for (const auto& id : kWithFormulas) {
    const FlatChart& c = flat_chart(id);
    for (int i = 0; i < 10; ++i) {
      auto psi = evaluate_psi(c, random_xi(rng, c.xi_symbols.size()));
      std::map<std::string, QPoly> at;
      for (std::size_t k = 0; k < psi.size(); ++k) at[c.slots[k]] = QPoly(psi[k]);
      for (const auto& rel : c.relations) {
        auto k = std::find(c.slots.begin(), c.slots.end(), rel.slot) - c.slots.begin();
        EXPECT_EQ(rel.rhs.substitute(at).constant_term(), psi[k]) << id << " " << rel.slot;
      }
    }
  }
}

TEST(Flatmap, IsoIdentities) {
  for (const auto& id : case_ids()) {
    CheckReport r = verify_iso(id);
    EXPECT_TRUE(r.ok()) << id;
    EXPECT_EQ(r.lines.size(), base_change(id).parameters.size() + flat_chart(id).slots.size());
  }
}

TEST(Flatmap, ForwardExamples) {
  EXPECT_EQ(forward_point("A3B2D4", {{"t2", 8}, {"t4", 8}}), (std::vector<Rational>{8, 0, Rational(-128, 27), 0}));
  for (const auto& id : case_ids()) {
    ParamPoint zero;
    for (const auto& p : base_change(id).parameters) zero[p] = 0;
    for (const auto& v : forward_point(id, zero)) EXPECT_EQ(v, 0) << id;
  }
  const BaseChange& e6 = base_change("D4G2E6");
  EXPECT_TRUE(e6.forward[1].is_zero());
  EXPECT_TRUE(e6.forward[4].is_zero());
}

TEST(Flatmap, PiPrimeExamples) {
  EXPECT_EQ(pi_prime("A3B2D4", qv({1, 1, 0, 0})), (std::vector<Rational>{2, 0, Rational(-2, 27), 0}));
  auto d6 = pi_prime("D4C3D6", qv({1, 1, 0, 0, 0, 0}));
  EXPECT_EQ(d6[0], 2);
  EXPECT_EQ(d6[2], 0);
  EXPECT_EQ(d6[5], 0);
  for (const auto& id : kWithFormulas) {
    std::size_t dim = build_root_system(case_meta(id).quotient_type).dimension();
    for (const auto& v : pi_prime(id, std::vector<Rational>(dim, 0))) EXPECT_EQ(v, 0) << id;
  }
  EXPECT_THROW(pi_prime("A3B2D4", qv({0, 0, 1, 0})), std::invalid_argument);
  EXPECT_THROW(pi_prime("D4C3D6", qv({1, 2, 0, 0, 0, 0})), std::invalid_argument);
  EXPECT_THROW(pi_prime("D4G2E7", qv({0, 0, 1, 1, 1, 1, -2, 1})), std::invalid_argument);
  EXPECT_THROW(pi_prime("E6F4E7", std::vector<Rational>(8, 0)), std::runtime_error);
}

TEST(Flatmap, ChartCoordinatesRoundTrip) {
  std::mt19937_64 rng(8);
  for (const auto& id : case_ids()) {
    const FlatChart& c = flat_chart(id);
    for (int i = 0; i < 10; ++i) {
      auto xi = random_xi(rng, c.xi_symbols.size());
      EXPECT_EQ(chart_coordinates(id, embed(c, xi)), xi) << id;
    }
  }
}

// sign changes and permutations of the chart coordinates that keep the chart
TEST(Flatmap, SignAndPermutationInvariance) {
  std::mt19937_64 rng(12);
  for (std::string id : {"A3B2D4", "A5B3D5", "D4C3D6"}) {
    const FlatChart& c = flat_chart(id);
    const std::size_t n = c.xi_symbols.size();
    for (int i = 0; i < 20; ++i) {
      auto xi = random_xi(rng, n);
      auto base = evaluate_psi(c, xi);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[rng() % k]);
      std::vector<Rational> moved(n);
      for (std::size_t k = 0; k < n; ++k) moved[k] = xi[perm[k]] * (rng() % 2 ? 1 : -1);
      EXPECT_EQ(evaluate_psi(c, moved), base) << id;
    }
  }
}

// psi2 is a multiple of the invariant quadratic form sum over roots of alpha(h)^2
TEST(Flatmap, QuadraticFlatCoordinateOracle) {
  std::mt19937_64 rng(21);
  for (const auto& id : kWithFormulas) {
    const FlatChart& c = flat_chart(id);
    const RootSystem phi = build_root_system(case_meta(id).quotient_type);
    Rational ratio = 0;
    for (int i = 0; i < 8; ++i) {
      auto xi = random_xi(rng, c.xi_symbols.size());
      auto h = embed(c, xi);
      Rational q = 0;
      for (const auto& a : phi.roots()) q += pairing(a, h) * pairing(a, h);
      if (q == 0) continue;
      Rational r = evaluate_psi(c, xi)[0] / q;
      if (ratio == 0) ratio = r;
      EXPECT_EQ(r, ratio) << id;
    }
    EXPECT_NE(ratio, 0) << id;
  }
}

TEST(Flatmap, WitnessRoundTrip) {
  for (const auto& id : kWithFormulas) {
    const CaseMeta m = case_meta(id);
    const RootSystem phi = build_root_system(m.quotient_type);
    for (const auto& s : enumerate_subsystems(phi, theta_roots(m, phi))) {
      auto psi = pi_prime(id, s.witness);
      EXPECT_EQ(forward_point(id, inverse_point(id, psi)), psi) << id;
    }
  }
}

TEST(Flatmap, Correspondence) {
  const std::map<std::string, std::size_t> counts = {{"A3B2D4", 6}, {"A5B3D5", 24}, {"D4C3D6", 24},
                                                     {"D4G2E6", 8}, {"D4G2E7", 8},  {"E6F4E7", 268}};
  for (const auto& [id, n] : counts) {
    CorrespondenceReport r = correspondence_check(id);
    EXPECT_TRUE(r.ok()) << id;
    EXPECT_EQ(r.entries.size(), n) << id;
    EXPECT_EQ(r.distinct_types, r.expected_distinct_types) << id;
    EXPECT_EQ(r.witness_route_available, id != "E6F4E7");
    for (const auto& e : r.entries) {
      EXPECT_EQ(e.route, id == "E6F4E7" ? "stratum" : "witness");
      EXPECT_EQ(e.configuration, e.type) << id << " " << e.index;
    }
  }
}

TEST(Flatmap, CorrespondenceExamples) {
  auto find = [](const CorrespondenceReport& r, const std::string& type) {
    for (const auto& e : r.entries)
      if (e.type.to_string() == type) return e;
    throw std::runtime_error("type not found: " + type);
  };
  auto b2 = correspondence_check("A3B2D4");
  auto a3 = find(b2, "A3");
  EXPECT_EQ(a3.stratum, "t4=-t2^2/8");
  EXPECT_EQ(a3.t.at("t4"), -a3.t.at("t2") * a3.t.at("t2") / 8);
  EXPECT_NE(a3.t.at("t4"), 0);
  auto full = find(b2, "D4");
  EXPECT_EQ(full.stratum, "origin");
  for (const auto& [k, v] : full.t) EXPECT_EQ(v, 0);

  auto g2 = correspondence_check("D4G2E7");
  auto d5 = find(g2, "D5+A1");
  EXPECT_EQ(d5.stratum, "t6=t2^3/108");
  EXPECT_EQ(d5.t.at("t6") * 108, d5.t.at("t2") * d5.t.at("t2") * d5.t.at("t2"));
  EXPECT_EQ(find(g2, "E7").stratum, "origin");
}
