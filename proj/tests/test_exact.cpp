#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "singfold/exact.hpp"

using namespace singfold;

namespace {

UPoly up(std::vector<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(v);
}

// fraction-free Bareiss rank over the integers, an independent oracle for rref
int bareiss_rank(std::vector<std::vector<Integer>> m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational q = parse_rational("6/-4");
  EXPECT_EQ(to_string(q), "-3/2");
  EXPECT_EQ(to_string(parse_rational("0/7")), "0");
  EXPECT_THROW(parse_rational("1/x"), std::invalid_argument);
}

TEST(UPoly, GcdAndSquarefree) {
  UPoly a = up({-1, 0, 1}), b = up({-1, 1});
  EXPECT_EQ(gcd(a, b), b);
  UPoly m = up({-1, 1}) * up({-1, 1}) * up({2, 1});
  EXPECT_EQ(squarefree_part(m), up({-1, 1}) * up({2, 1}));
  XGcd e = xgcd(up({-2, 0, 1}), up({0, 1}));
  EXPECT_EQ(e.s * up({-2, 0, 1}) + e.t * up({0, 1}), e.g);
}

TEST(Extension, MakeExtension) {
  EXPECT_EQ(make_extension(up({-3, 1}))->degree(), 1);
  EXPECT_EQ(make_extension(up({-2, 0, 1}))->degree(), 2);
  auto r = make_extension(up({-1, 1}) * up({-1, 1}) * up({2, 1}));
  EXPECT_EQ(r->degree(), 2);
  EXPECT_EQ(r->modulus(), up({-2, 1, 1}));
  EXPECT_THROW(make_extension(up({5})), std::invalid_argument);
  EXPECT_THROW(make_extension(UPoly()), std::invalid_argument);
}

TEST(Extension, Invert) {
  auto r = make_extension(up({-2, 0, 1}));
  auto a = AlgebraicScalar::generator(r);
  auto b = std::get<AlgebraicScalar>(invert(a));
  EXPECT_EQ(b, AlgebraicScalar(r, UPoly::monomial(Rational(1, 2), 1)));
  EXPECT_EQ(a * b, AlgebraicScalar(1));

  auto s = make_extension(up({-1, 1}) * up({2, 1}));
  auto ev = invert(AlgebraicScalar::generator(s) - AlgebraicScalar(1));
  ASSERT_TRUE(std::holds_alternative<SplitEvent>(ev));
  auto e = std::get<SplitEvent>(ev);
  EXPECT_EQ(e.factor_a * e.factor_b, s->modulus());
  EXPECT_GE(e.factor_a.degree(), 1);
  EXPECT_GE(e.factor_b.degree(), 1);

  auto t = make_extension(up({-3, 1}));
  EXPECT_EQ(std::get<AlgebraicScalar>(invert(AlgebraicScalar(t, UPoly::constant(5)))),
            AlgebraicScalar(Rational(1, 5)));
  EXPECT_THROW(invert(AlgebraicScalar(t, UPoly())), std::domain_error);
}

TEST(Extension, MismatchedRings) {
  auto r = make_extension(up({-2, 0, 1}));
  auto s = make_extension(up({-3, 0, 1}));
  EXPECT_THROW(AlgebraicScalar::generator(r) + AlgebraicScalar::generator(s), std::invalid_argument);
}

TEST(Extension, InverseProperty) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  auto r = make_extension(up({-2, 1, 0, 1}));  // x^3 + x - 2 = (x-1)(x^2+x+2)
  int splits = 0, inverted = 0;
  for (int k = 0; k < 200; ++k) {
    AlgebraicScalar a(r, up({d(rng), d(rng), d(rng)}));
    if (a.is_zero()) continue;
    auto res = invert(a);
    if (auto* b = std::get_if<AlgebraicScalar>(&res)) {
      EXPECT_EQ(a * *b, AlgebraicScalar(1));
      ++inverted;
    } else {
      auto& e = std::get<SplitEvent>(res);
      EXPECT_EQ(e.factor_a * e.factor_b, r->modulus());
      ++splits;
    }
  }
  EXPECT_GT(inverted, 0);
  EXPECT_GT(splits, 0);
}

TEST(RowReduce, Examples) {
  Matrix<Rational> id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(row_reduce(id).rank, 3);
  Matrix<Rational> m = {{1, 2}, {2, 4}};
  EXPECT_EQ(row_reduce(m).rank, 1);
  auto r = make_extension(up({-2, 0, 1}));
  auto a = AlgebraicScalar::generator(r);
  Matrix<AlgebraicScalar> k = {{a, 1}, {1, a}};
  auto rr = row_reduce(k);
  ASSERT_TRUE(std::holds_alternative<RowReduced<AlgebraicScalar>>(rr));
  EXPECT_EQ(std::get<RowReduced<AlgebraicScalar>>(rr).rank, 2);
  Matrix<Rational> ragged = {{1, 2}, {3}};
  EXPECT_THROW(row_reduce(ragged), std::invalid_argument);
}

TEST(RowReduce, SplitPropagates) {
  auto s = make_extension(up({-1, 1}) * up({2, 1}));
  auto a = AlgebraicScalar::generator(s);
  Matrix<AlgebraicScalar> k = {{a - AlgebraicScalar(1), 1}, {0, 1}};
  auto rr = row_reduce(k);
  EXPECT_TRUE(std::holds_alternative<SplitEvent>(rr));
}

TEST(RowReduce, RankMatchesBareissAndPermutations) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 8), val(-3, 3), coin(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    int rows = dim(rng), cols = dim(rng);
    std::vector<std::vector<Integer>> zi(rows, std::vector<Integer>(cols));
    Matrix<Rational> q(rows, std::vector<Rational>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        int v = coin(rng) == 0 ? 0 : val(rng);
        // low-rank rows now and then
        if (i > 0 && coin(rng) == 0) v = 0;
        zi[i][j] = v;
        q[i][j] = v;
      }
    if (rows > 2 && coin(rng) == 0) {
      for (int j = 0; j < cols; ++j) {
        q[rows - 1][j] = q[0][j] * 2 - q[1][j];
        zi[rows - 1][j] = zi[0][j] * 2 - zi[1][j];
      }
    }
    int rank = row_reduce(q).rank;
    EXPECT_EQ(rank, bareiss_rank(zi));
    std::shuffle(q.begin(), q.end(), rng);
    EXPECT_EQ(row_reduce(q).rank, rank);
  }
}

TEST(Nullspace, Basis) {
  Matrix<Rational> m = {{1, 1, 0}, {0, 0, 1}};
  auto n = nullspace(m, 3);
  ASSERT_EQ(n.size(), 1u);
  EXPECT_EQ(n[0][0] + n[0][1], 0);
  EXPECT_EQ(n[0][2], 0);
}
