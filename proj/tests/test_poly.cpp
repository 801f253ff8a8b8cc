#include <gtest/gtest.h>

#include <random>

#include "singfold/poly.hpp"

using namespace singfold;

namespace {

QPoly P(const std::string& s) { return parse_polynomial(s); }

QPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> c(-4, 4), e(0, maxdeg);
  QPoly p;
  for (int k = 0; k < terms; ++k) {
    QPoly m(Rational(c(rng)));
    for (const auto& v : vars) m = m * var(v).pow(e(rng));
    p += m;
  }
  return p;
}

UPoly to_upoly(const QPoly& p, const std::string& v) {
  std::vector<Rational> c;
  for (const auto& k : p.coefficients_in(v)) c.push_back(k.constant_term());
  return UPoly(c);
}

// Sylvester determinant by plain Gaussian elimination
Rational sylvester_resultant(const UPoly& a, const UPoly& b) {
  int m = a.degree(), n = b.degree();
  int size = m + n;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = b.coeff(n - j);
  Rational det = 1;
  for (int c = 0; c < size; ++c) {
    int p = c;
    while (p < size && s[p][c] == 0) ++p;
    if (p == size) return 0;
    if (p != c) {
      std::swap(s[p], s[c]);
      det = -det;
    }
    det *= s[c][c];
    for (int i = c + 1; i < size; ++i) {
      Rational f = s[i][c] / s[c][c];
      for (int j = c; j < size; ++j) s[i][j] -= f * s[c][j];
    }
  }
  return det;
}

// shape from the number of distinct projective roots, counted with gcds
BinaryCubicShape cubic_shape_oracle(const QPoly& c) {
  if (c.is_zero()) return BinaryCubicShape::Zero;
  QPoly f = c.substitute({{"b", QPoly(1)}});
  UPoly u = f.has_variable("a") ? to_upoly(f.with_variables({"a"}), "a") : UPoly::constant(f.constant_term());
  int at_infinity = 3 - u.degree();
  int distinct = squarefree_part(u).degree() + (at_infinity > 0 ? 1 : 0);
  if (distinct == 3) return BinaryCubicShape::ThreeDistinct;
  if (distinct == 2) return BinaryCubicShape::OneDouble;
  return BinaryCubicShape::Triple;
}

}  // namespace

TEST(Poly, Arithmetic) {
  EXPECT_EQ(P("(x+y)*(x-y)"), P("x^2-y^2"));
  EXPECT_EQ(P("(z^2)^2"), P("z^4"));
  QPoly f = P("-1/4*x^4+y^3+z^2");
  EXPECT_TRUE((f - f).is_zero());
}

TEST(Poly, ParsePrintRoundTrip) {
  QPoly p = P("-1/64*X^5 + X*Y^2 - W^2");
  EXPECT_EQ(p.to_string(), "-1/64*X^5 + X*Y^2 - W^2");
  EXPECT_EQ(P(p.to_string()), p);
  EXPECT_EQ(P("t2^2/8 + 3").to_string(), "1/8*t2^2 + 3");
  EXPECT_THROW(P("x/y"), std::invalid_argument);
  EXPECT_THROW(P("x+"), std::invalid_argument);
  EXPECT_EQ(P("0").to_string(), "0");
}

TEST(Poly, CanonicalVariableOrder) {
  QPoly p = P("psi2 + xi3 + t4 + W + x");
  std::vector<std::string> want = {"x", "W", "t4", "xi3", "psi2"};
  EXPECT_EQ(p.variables(), want);
  EXPECT_TRUE(symbol_less("psi18", "psi"));
  EXPECT_TRUE(symbol_less("t2", "t12"));
}

TEST(Poly, Differentiate) {
  EXPECT_EQ(P("z^4 - x*y").differentiate("z"), P("4*z^3"));
  EXPECT_EQ(P("z^4 - x*y").differentiate("x"), P("-y"));
  QPoly c3 = P("-1/64*X^5 + X*Y^2 - W^2 + (t6/4 + t2*t4/24 + t2^3/432)*Y");
  EXPECT_EQ(c3.differentiate("Y"), P("2*X*Y + t6/4 + t2*t4/24 + t2^3/432"));
  EXPECT_THROW(P("x").differentiate("q"), std::invalid_argument);
}

TEST(Poly, Substitute) {
  QPoly f = P("z^4+t2*z^2+t4+t2^2/8-x*y");
  EXPECT_EQ(f.substitute({{"x", var("y")}, {"y", var("x")}, {"z", -var("z")}}), f);
  EXPECT_EQ(f.substitute({{"x", QPoly(0)}, {"y", QPoly(0)}, {"z", QPoly(0)}}), P("t4+t2^2/8"));
  EXPECT_EQ(P("x^2").substitute({{"x", P("x+1")}}), P("x^2+2*x+1"));
}

TEST(Poly, RingAxiomsAndLeibniz) {
  std::mt19937 rng(3);
  std::vector<std::string> vs = {"x", "y", "z"};
  for (int k = 0; k < 50; ++k) {
    QPoly p = random_poly(rng, vs, 4, 3), q = random_poly(rng, vs, 4, 3), r = random_poly(rng, vs, 3, 2);
    EXPECT_EQ((p + q) * r, p * r + q * r);
    QPoly pq = (p * q).with_variables(vs), pp = p.with_variables(vs), qq = q.with_variables(vs);
    EXPECT_EQ(pq.differentiate("x"), pp.differentiate("x") * q + p * qq.differentiate("x"));
    EXPECT_EQ((pp + qq).differentiate("y"), pp.differentiate("y") + qq.differentiate("y"));
  }
}

TEST(Poly, ResultantExamples) {
  // Sylvester determinant convention: lc(p)^deg(q) times q over the roots of p
  EXPECT_EQ(resultant(P("x-y"), P("x+y"), "y"), P("-2*x"));
  EXPECT_EQ(resultant(P("z^2-t2"), P("z"), "z"), P("-t2"));
  EXPECT_EQ(resultant(P("y^2-x"), P("y^2-2*x"), "y"), P("x^2"));
  EXPECT_THROW(resultant(QPoly(), P("x"), "x"), std::invalid_argument);
}

TEST(Poly, ResultantMatchesSylvesterAndGcd) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> deg(1, 6), c(-3, 3), coin(0, 2);
  for (int k = 0; k < 200; ++k) {
    auto make = [&](int d) {
      std::vector<Rational> v(d + 1);
      for (auto& x : v) x = c(rng);
      v[d] = c(rng) == 0 ? 1 : c(rng) == 0 ? 2 : -1;
      return UPoly(v);
    };
    UPoly a = make(deg(rng)), b = make(deg(rng));
    if (coin(rng) == 0) {
      UPoly f = make(1 + coin(rng));
      a = a * f;
      b = b * f;
    }
    auto lift_u = [](const UPoly& u) {
      QPoly p;
      for (int i = 0; i <= u.degree(); ++i) p += var("x").pow(i).scaled(u.coeff(i));
      return p;
    };
    QPoly pa = lift_u(a), pb = lift_u(b);
    QPoly r = resultant(pa, pb, "x");
    ASSERT_TRUE(r.is_constant());
    EXPECT_EQ(r.constant_term(), sylvester_resultant(a, b));
    QPoly g = gcd_univariate(pa, pb, "x");
    EXPECT_EQ(r.is_zero(), g.total_degree() > 0);
    EXPECT_EQ(to_upoly(g, "x"), gcd(a, b));
  }
}

TEST(Poly, ResultantMultivariate) {
  // Res_y of two conics, cross-checked by evaluation at x = 0..4
  QPoly p = P("y^2 + x*y - 3*x + 1"), q = P("2*y^2 - x^2*y + 5");
  QPoly r = resultant(p, q, "y");
  for (int v = 0; v < 5; ++v) {
    QPoly pv = p.substitute({{"x", QPoly(v)}}), qv = q.substitute({{"x", QPoly(v)}});
    QPoly rv = r.substitute({{"x", QPoly(v)}});
    EXPECT_EQ(rv.constant_term(), sylvester_resultant(to_upoly(pv, "y"), to_upoly(qv, "y")));
  }
}

TEST(Poly, GcdExamples) {
  EXPECT_EQ(gcd_univariate(P("x^2-1"), P("x-1"), "x"), P("x-1"));
  EXPECT_EQ(gcd_univariate(P("x^3"), P("x^2"), "x"), P("x^2"));
  EXPECT_EQ(gcd_univariate(P("(x^2-2)*(x+1)"), P("(x^2-2)*(x+3)"), "x"), P("x^2-2"));
  EXPECT_THROW(gcd_univariate(QPoly(), QPoly(), "x"), std::invalid_argument);
}

TEST(Poly, GcdOverExtensionSplits) {
  auto ring = make_extension(UPoly(std::vector<Rational>{-1, 0, 1}));  // a^2 - 1
  AlgebraicScalar a = AlgebraicScalar::generator(ring);
  KPoly p = lift(P("x^2 - 1"));
  KPoly q = lift(var("x")) - KPoly(a);
  auto r = try_gcd_univariate(p, q, "x");
  // x - a divides x^2 - 1 in both branches, so no split is needed here
  ASSERT_TRUE(std::holds_alternative<KPoly>(r));
  EXPECT_EQ(std::get<KPoly>(r).total_degree(), 1);
  KPoly s = lift(P("x")) - KPoly(a - AlgebraicScalar(1));
  auto r2 = try_gcd_univariate(lift(P("x")), s, "x");
  EXPECT_TRUE(std::holds_alternative<SplitEvent>(r2));
}

TEST(Poly, CubicShapeExamples) {
  EXPECT_EQ(binary_cubic_shape(P("a^2*b + b^3"), "a", "b"), BinaryCubicShape::ThreeDistinct);
  EXPECT_EQ(binary_cubic_shape(P("a^2*b"), "a", "b"), BinaryCubicShape::OneDouble);
  EXPECT_EQ(binary_cubic_shape(P("a^3"), "a", "b"), BinaryCubicShape::Triple);
  EXPECT_EQ(binary_cubic_shape(QPoly(), "a", "b"), BinaryCubicShape::Zero);
  EXPECT_THROW(binary_cubic_shape(P("a^2"), "a", "b"), std::invalid_argument);
}

TEST(Poly, CubicShapeOracleAndInvariance) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> c(-3, 3);
  std::map<BinaryCubicShape, int> seen;
  for (int k = 0; k < 400; ++k) {
    // products of random linear forms produce all shapes
    QPoly l1 = P("a").scaled(c(rng)) + P("b").scaled(c(rng));
    QPoly l2 = k % 3 == 0 ? l1 : P("a").scaled(c(rng)) + P("b").scaled(c(rng));
    QPoly l3 = k % 5 == 0 ? l2 : P("a").scaled(c(rng)) + P("b").scaled(c(rng));
    QPoly cub = k % 7 == 0 ? P("a^3+b^3-a*b^2").scaled(c(rng) == 0 ? 1 : 2) : l1 * l2 * l3;
    if (!cub.is_zero() && !cub.is_homogeneous(3)) continue;
    auto shape = binary_cubic_shape(cub, "a", "b");
    EXPECT_EQ(shape, cubic_shape_oracle(cub)) << cub.to_string();
    ++seen[shape];
    // unimodular change a -> p a + q b, b -> r a + s b with ps - qr = 1
    int p = c(rng), q = c(rng);
    if (p == 0) p = 1;
    Rational r = c(rng), s = (1 + q * r) / Rational(p);
    QPoly moved = cub.substitute({{"a", P("a").scaled(p) + P("b").scaled(q)},
                                  {"b", P("a").scaled(r) + P("b").scaled(s)}});
    EXPECT_EQ(binary_cubic_shape(moved, "a", "b"), shape);
  }
  EXPECT_EQ(seen.size(), 4u);
}
