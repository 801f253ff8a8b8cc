#include <gtest/gtest.h>

#include <random>

#include "singfold/families.hpp"
#include "singfold/singclass.hpp"

using namespace singfold;

namespace {

QPoly P(const std::string& s) { return parse_polynomial(s); }

std::string label(const QPoly& F) { return fiber_configuration(F).type.to_string(); }

// Arnold normal forms with their labels
std::vector<std::pair<std::string, std::string>> normal_forms() {
  std::vector<std::pair<std::string, std::string>> v;
  for (int k = 1; k <= 8; ++k) v.push_back({"x^" + std::to_string(k + 1) + " + y^2 + z^2", "A" + std::to_string(k)});
  for (int k = 4; k <= 8; ++k) v.push_back({"x^2*y + y^" + std::to_string(k - 1) + " + z^2", "D" + std::to_string(k)});
  v.push_back({"x^3 + y^4 + z^2", "E6"});
  v.push_back({"x^3 + x*y^3 + z^2", "E7"});
  v.push_back({"x^3 + y^5 + z^2", "E8"});
  return v;
}

// Milnor number of a quasi-homogeneous isolated singularity: prod(1/w_i - 1)
int weighted_milnor(const std::vector<Rational>& weights) {
  Rational mu = 1;
  for (const auto& w : weights) mu *= 1 / w - 1;
  return static_cast<int>(mu.get_num().get_si());
}

Rational small(std::mt19937_64& rng, int range) {
  return Rational(static_cast<long>(rng() % (2 * range + 1)) - range);
}

// x, y mixed by an invertible integer matrix plus a shift; z sent to a*z plus
// a linear form, so that one partial stays linear
std::map<std::string, QPoly> random_affine(std::mt19937_64& rng) {
  Rational a, b, c, d;
  do {
    a = small(rng, 2), b = small(rng, 2), c = small(rng, 2), d = small(rng, 2);
  } while (a * d - b * c == 0);
  Rational s = rng() % 2 ? 1 : -1;
  QPoly x = var("x"), y = var("y"), z = var("z");
  return {{"x", x.scaled(a) + y.scaled(b) + QPoly(small(rng, 3))},
          {"y", x.scaled(c) + y.scaled(d) + QPoly(small(rng, 3))},
          {"z", z.scaled(s) + x.scaled(small(rng, 1)) + y.scaled(small(rng, 1)) + QPoly(small(rng, 3))}};
}

int weighted_total(const FiberConfiguration& c) {
  int n = 0;
  for (const auto& r : c.points) n += r.milnor * r.orbit_size();
  return n;
}

}  // namespace

TEST(Singclass, NormalFormsOracle) {
  for (const auto& [f, want] : normal_forms()) {
    auto conf = fiber_configuration(P(f));
    ASSERT_EQ(conf.points.size(), 1u) << f;
    EXPECT_EQ(conf.points[0].type, want) << f;
    EXPECT_EQ(conf.type.to_string(), want) << f;
  }
}

TEST(Singclass, KleinForms) {
  EXPECT_EQ(label(P("X^4 + Y*Z")), "A3");
  EXPECT_EQ(label(P("X*(Y^2 - X^3) + Z^2")), "D5");
  EXPECT_EQ(label(P("X^4 + Y^3 + Z^2")), "E6");
  EXPECT_EQ(label(P("X^3 + X*Y^3 + Z^2")), "E7");
  EXPECT_EQ(label(P("X^5 + Y^3 + Z^2")), "E8");
  for (int n = 2; n <= 6; ++n) {
    EXPECT_EQ(label(P("X^" + std::to_string(n) + " + Y*Z")), "A" + std::to_string(n - 1));
    EXPECT_EQ(label(P("X*(Y^2 - X^" + std::to_string(n) + ") + Z^2")), "D" + std::to_string(n + 2));
  }
}

TEST(Singclass, MilnorMatchesWeightedFormula) {
  for (int k = 1; k <= 8; ++k) {
    QPoly F = P("x^" + std::to_string(k + 1) + " + y^2 + z^2");
    auto pts = singular_points(F);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(milnor_number(F, pts[0]), weighted_milnor({Rational(1, k + 1), Rational(1, 2), Rational(1, 2)}));
  }
  for (int k = 4; k <= 8; ++k) {
    QPoly F = P("x^2*y + y^" + std::to_string(k - 1) + " + z^2");
    auto pts = singular_points(F);
    // weights: y has 1/(k-1), x has (k-2)/(2(k-1))
    EXPECT_EQ(milnor_number(F, pts[0]),
              weighted_milnor({Rational(k - 2, 2 * (k - 1)), Rational(1, k - 1), Rational(1, 2)}));
  }
  EXPECT_EQ(milnor_number(P("x^3 + x*y^3 + z^2"), singular_points(P("x^3 + x*y^3 + z^2"))[0]),
            weighted_milnor({Rational(1, 3), Rational(2, 9), Rational(1, 2)}));
}

TEST(Singclass, MilnorExamples) {
  auto mu = [](const std::string& f) {
    QPoly F = P(f);
    return milnor_number(F, singular_points(F).at(0));
  };
  EXPECT_EQ(mu("x^2 + y^2 + z^2"), 1);
  EXPECT_EQ(mu("X^3 + X*Y^3 + Z^2"), 7);
  EXPECT_EQ(mu("x^2*y + y^5 + z^2"), 6);
}

TEST(Singclass, TruncationStable) {
  for (const auto& [f, want] : normal_forms()) {
    QPoly F = P(f);
    auto p = singular_points(F).at(0);
    int mu = milnor_number(F, p);
    for (int N = 10; N <= 16; ++N) EXPECT_EQ(truncated_milnor(F, p, N), mu) << f << " N=" << N;
  }
}

TEST(Singclass, HessianCorank) {
  auto corank = [](const std::string& f) {
    QPoly F = P(f);
    return hessian_corank(F, singular_points(F).at(0));
  };
  EXPECT_EQ(corank("x^2 + y^2 + z^2"), 0);
  EXPECT_EQ(corank("z^4 - x*y"), 1);
  EXPECT_EQ(corank("X^4 + Y^3 + Z^2"), 2);
}

TEST(Singclass, PointSetExamples) {
  auto pts = singular_points(P("z^4 - x*y"));
  ASSERT_EQ(pts.size(), 1u);
  for (const auto& c : pts[0].coordinates) EXPECT_TRUE(c.is_zero());
  EXPECT_TRUE(singular_points(P("x^2 + y^2 + z^2 - 1")).empty());
  EXPECT_TRUE(fiber_configuration(P("x^2 + y^2 + z^2 - 1")).smooth());
}

TEST(Singclass, GradientVanishesOnEveryPoint) {
  const CaseDescriptor& d = descriptor("E6F4E7");
  std::vector<std::string> vars = d.quotient_variables;
  for (const auto& t : random_points("E6F4E7", 5, 11)) {
    QPoly F = quotient_at(d, t);
    for (const auto& p : singular_points(F, vars)) {
      EXPECT_TRUE(evaluate_at(F, p).is_zero());
      for (const auto& v : vars) EXPECT_TRUE(evaluate_at(F.differentiate(v), p).is_zero());
    }
  }
}

TEST(Singclass, CaseFibers) {
  const CaseDescriptor& b2 = descriptor("A3B2D4");
  EXPECT_EQ(fiber_configuration(quotient_at(b2, {{"t2", 8}, {"t4", 8}}), b2.quotient_variables).type.to_string(),
            "A1+A1+A1");
  const CaseDescriptor& e6 = descriptor("D4G2E6");
  EXPECT_EQ(fiber_configuration(quotient_at(e6, {{"t2", 0}, {"t6", 0}}), e6.quotient_variables).type.to_string(),
            "E6");
  EXPECT_EQ(fiber_configuration(P("11664*X^4 - Y^3 - Z^2")).type.to_string(), "E6");
  const CaseDescriptor& b3 = descriptor("A5B3D5");
  EXPECT_EQ(fiber_configuration(quotient_at(b3, {{"t2", 6}, {"t4", 0}, {"t6", -2}}), b3.quotient_variables)
                .type.to_string(),
            "A3+A1");
  const CaseDescriptor& f4 = descriptor("E6F4E7");
  for (const auto& t : random_points("E6F4E7", 3, 5)) {
    auto conf = fiber_configuration(quotient_at(f4, t), f4.quotient_variables);
    int a1 = static_cast<int>(std::count(conf.type.components().begin(), conf.type.components().end(), "A1"));
    EXPECT_GE(a1, 3);
  }
}

TEST(Singclass, Errors) {
  EXPECT_THROW(fiber_configuration(P("x^2 + y^2"), {"x", "y", "z"}), SingularityError);
  EXPECT_THROW(fiber_configuration(P("x^2*y^2 + z^2")), SingularityError);
  EXPECT_THROW(fiber_configuration(P("x^10 + y^2 + z^2")), SingularityError);
  EXPECT_THROW(fiber_configuration(P("x^3 + y^3 + z^3")), SingularityError);
  EXPECT_THROW(fiber_configuration(P("x^2 + y^2 + z^2 + w^2")), SingularityError);
}

TEST(Singclass, RecordInvariants) {
  for (const auto& [f, want] : normal_forms()) {
    for (const auto& r : fiber_configuration(P(f)).points) {
      EXPECT_GE(r.milnor, 1);
      EXPECT_EQ(r.corank <= 1, r.type == "A" + std::to_string(r.milnor));
      bool triple = r.cubic_shape && *r.cubic_shape == BinaryCubicShape::Triple;
      EXPECT_EQ(r.corank == 2 && triple, r.type[0] == 'E');
    }
  }
}

TEST(Singclass, AffineInvariance) {
  std::mt19937_64 rng(20261016);
  auto forms = normal_forms();
  for (int trial = 0; trial < 24; ++trial) {
    const auto& [f, want] = forms[rng() % forms.size()];
    QPoly G = P(f).substitute(random_affine(rng));
    auto conf = fiber_configuration(G);
    ASSERT_EQ(conf.points.size(), 1u) << G;
    EXPECT_EQ(conf.points[0].type, want) << G;
    EXPECT_EQ(conf.points[0].orbit_size(), 1);
  }
}

TEST(Singclass, VariableOrderInvariance) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> names = {"x", "y", "z"};
  for (std::string id : {"A3B2D4", "A5B3D5", "D4C3D6", "D4G2E6"}) {
    const CaseDescriptor& d = descriptor(id);
    for (const auto& t : random_points(id, 3, rng())) {
      QPoly F = quotient_at(d, t);
      auto base = fiber_configuration(F, d.quotient_variables);
      std::vector<int> perm = {0, 1, 2};
      while (std::next_permutation(perm.begin(), perm.end())) {
        std::map<std::string, QPoly> rename;
        for (int i = 0; i < 3; ++i) rename[d.quotient_variables[i]] = var(names[perm[i]]);
        auto conf = fiber_configuration(F.substitute(rename), names);
        EXPECT_EQ(conf.type, base.type) << id;
        EXPECT_EQ(weighted_total(conf), weighted_total(base)) << id;
      }
    }
  }
}

TEST(Singclass, ConjugatePointsAgree) {
  int checked = 0;
  for (const auto& id : case_ids()) {
    const CaseDescriptor& d = descriptor(id);
    for (const auto& t : random_points(id, 4, 1)) {
      QPoly F = quotient_at(d, t);
      for (const auto& r : fiber_configuration(F, d.quotient_variables).points) {
        const SingularPoint& p = r.point;
        if (p.ring->degree() != 2) continue;
        // a -> -b - a for the modulus a^2 + b*a + c
        const Rational b = p.ring->modulus().coeff(1);
        SingularPoint q = p;
        for (auto& c : q.coordinates)
          c = AlgebraicScalar(p.ring, UPoly(std::vector<Rational>{c.value().coeff(0) - b * c.value().coeff(1),
                                                                   -c.value().coeff(1)}));
        EXPECT_EQ(classify_point(F, q).type, r.type) << id;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}
