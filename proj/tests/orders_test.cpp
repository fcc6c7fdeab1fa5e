#include <gtest/gtest.h>

#include <random>

#include "linkcount/orders.hpp"

namespace linkcount {
namespace {

// Closed-form generator matrix of the level order over (1, w1, w2, w3).
std::vector<QVec> closed_form_rows(Int D1, Int D2, Int x, Int ell) {
  const Int p1 = mod_floor(D1, 2), p2 = mod_floor(D2, 2);
  const Rational L(ell);
  return {
      {1, 0, 0, 0},
      {Rational(p1, 2), Rational(1, 2), 0, 0},
      {Rational(p2, 2), 0, Rational(1, 2), 0},
      {0, 0, 0, Rational(1, 2)},
      {Rational(p1 * p2 + x, 4), Rational(p2, 4), Rational(p1, 4), L / 4},
      {0, Rational(-x) / (4 * L), Rational(D1) / (4 * L), Rational(p1, 4)},
      {0, Rational(-D2) / (4 * L), Rational(x) / (4 * L), Rational(p2, 4)},
      {Rational(x * x - D1 * D2) / (8 * L), Rational(-p2 * x - p1 * D2) / (8 * L), Rational(p1 * x + p2 * D1) / (8 * L),
       Rational(p1 * p2 + x, 8)},
  };
}

TEST(Hnf, CanonicalAndUnique) {
  std::vector<QVec> a{{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, Rational(1, 2)}};
  std::vector<QVec> b{{1, 2, 0, 0}, {0, 2, 0, 0}, {1, 2, 3, 0}, {0, 0, 3, Rational(1, 2)}, {2, 4, 6, 1}};
  const auto ha = hermite_basis(a), hb = hermite_basis(b);
  EXPECT_EQ(ha, hb);
  EXPECT_EQ(ha.denominator, 2);
  EXPECT_EQ(ha.determinant(), Rational(3));
  EXPECT_TRUE(contains(ha, hb));
}

TEST(Hnf, RankDeficient) {
  std::vector<QVec> a{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}};
  try {
    hermite_basis(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Hnf, RandomUnimodularInvariance) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 100; ++t) {
    std::vector<QVec> g;
    for (int r = 0; r < 4; ++r) g.push_back({Rational(d(rng), 3), d(rng), Rational(d(rng), 2), d(rng)});
    g[0][0] += 7;
    g[1][1] += 7;
    g[2][2] += 7;
    g[3][3] += 7;
    std::vector<QVec> h = g;
    // elementary row operations
    for (int k = 0; k < 6; ++k) {
      const int i = k % 4, j = (k + 1 + k / 4) % 4;
      const int c = d(rng);
      for (int col = 0; col < 4; ++col) h[i][col] += c * h[j][col];
    }
    EXPECT_EQ(hermite_basis(g), hermite_basis(h));
  }
}

TEST(Lattice, ReducedDiscriminantOfLipschitz) {
  QuatAlgebra ham(-1, -1);
  auto L = lattice_from_elements(ham, {ham.element(1, 0, 0, 0), ham.element(0, 1, 0, 0), ham.element(0, 0, 1, 0),
                                       ham.element(0, 0, 0, 1)});
  EXPECT_EQ(reduced_discriminant(L), Rational(4));
  auto H = lattice_from_elements(
      ham, {ham.element(Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)), ham.element(0, 1, 0, 0),
            ham.element(0, 0, 1, 0), ham.element(0, 0, 0, 1)});
  EXPECT_EQ(reduced_discriminant(H), Rational(2));
  EXPECT_TRUE(contains(H, L));
  EXPECT_FALSE(contains(L, H));
  EXPECT_TRUE(is_order(H));
}

TEST(Lattice, DiscriminantScalesWithCovolume) {
  QuatAlgebra alg(Rational(-3, 2), 7);
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<QuatElement> g;
    for (int r = 0; r < 4; ++r) g.push_back(alg.element(Rational(d(rng), 2), d(rng), d(rng), Rational(d(rng), 3)));
    Rational det;
    try {
      det = hermite_basis({g[0].coords(), g[1].coords(), g[2].coords(), g[3].coords()}).determinant();
    } catch (const Error&) {
      continue;
    }
    const auto L = lattice_from_elements(alg, g);
    EXPECT_EQ(reduced_discriminant(L), Rational(4) * Rational(21, 2) * det);
  }
}

TEST(Pair, StandardEmbedding) {
  const auto pair = standard_xlinked_pair(5, 381, 3);
  EXPECT_EQ(pair.w1 * pair.w1, pair.algebra.element(5, 0, 0, 0));
  EXPECT_EQ(pair.w2 * pair.w2, pair.algebra.element(381, 0, 0, 0));
  EXPECT_EQ((pair.w1 * pair.w2).trd(), Rational(6));
  const auto zero = pair.algebra.element(0, 0, 0, 0);
  EXPECT_EQ(pair.v1 * pair.v1 - pair.v1 + Rational(1 - 5, 4), zero);
  EXPECT_EQ(pair.v2 * pair.v2 - pair.v2 + Rational(1 - 381, 4), zero);
  EXPECT_EQ(pair.algebra.ramified_primes(), (std::vector<Int>{2, 3}));
}

TEST(Pair, InvalidTriples) {
  try {
    standard_xlinked_pair(5, 5, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidTriple);
  }
  EXPECT_THROW(standard_xlinked_pair(5, 381, 2), Error);
}

TEST(Order, Generated) {
  const auto pair = standard_xlinked_pair(5, 381, 3);
  const auto O = generated_order(pair);
  EXPECT_EQ(reduced_discriminant(O), Rational(474));
  EXPECT_TRUE(is_order(O));
  EXPECT_TRUE(O.contains(pair.v1));
  EXPECT_TRUE(O.contains(pair.v2));
}

TEST(Order, LevelRejected) {
  const auto pair = standard_xlinked_pair(5, 381, 3);
  try {
    generated_order_level(pair, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LevelNotAllowed);
  }
}

TEST(Order, LevelOneIsGeneratedOrder) {
  for (Int x : {1, 3, 7, 13, 25, 31}) {
    const auto pair = standard_xlinked_pair(5, 381, x);
    EXPECT_EQ(generated_order_level(pair, 1), generated_order(pair)) << x;
  }
}

TEST(Order, LevelAgainstClosedForm) {
  const auto pair = standard_xlinked_pair(73, 937, 89);
  const Int m = *pair.triple.m;
  for (Int ell = 1; ell * ell <= m; ++ell) {
    if (m % (ell * ell)) continue;
    const auto O = generated_order_level(pair, ell);
    EXPECT_TRUE(is_order(O));
    EXPECT_EQ(reduced_discriminant(O), Rational(m / (ell * ell)));
    const auto W = level_lattice_w_basis(pair, ell);
    EXPECT_EQ(W.determinant(), Rational(1, 16 * ell));
    EXPECT_EQ(W, hermite_basis(closed_form_rows(73, 937, 89, ell)));
    EXPECT_EQ(O.determinant(), Rational(1, 16 * ell) / Rational(73 * ell));
  }
}

TEST(Order, RandomNiceTriplesMatchClosedForm) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Int> dd(5, 900);
  int checked = 0;
  while (checked < 40) {
    Int D1 = dd(rng), D2 = dd(rng);
    if (mod_floor(D1, 4) > 1 || mod_floor(D2, 4) > 1 || is_square(D1) || is_square(D2)) continue;
    const Int s = isqrt(D1 * D2 - 1);
    Int x = std::uniform_int_distribution<Int>(-s, s)(rng);
    const auto t = classify(D1, D2, x);
    if (!t.nice) continue;
    const auto pair = standard_xlinked_pair(t);
    const Int m = checked_abs(*t.m);
    for (Int ell = 1; ell * ell <= m; ++ell) {
      if (m % (ell * ell)) continue;
      const auto O = generated_order_level(pair, ell);
      EXPECT_EQ(level_lattice_w_basis(pair, ell), hermite_basis(closed_form_rows(D1, D2, x, ell)));
      EXPECT_EQ(reduced_discriminant(O), Rational(m / (ell * ell)));
    }
    ++checked;
  }
}

}  // namespace
}  // namespace linkcount
