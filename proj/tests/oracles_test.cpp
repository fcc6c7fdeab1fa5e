#include <gtest/gtest.h>

#include "linkcount/linking.hpp"
#include "linkcount/oracles.hpp"

namespace linkcount {
namespace {

TEST(Tree, Examples) {
  EXPECT_EQ(tree_count(3, 0, 1, false), 2);
  EXPECT_EQ(tree_count(4, 0, 2, false), 1);
  EXPECT_EQ(tree_count(3, 3, 0, false), 1);
  EXPECT_THROW(tree_count(3, 4, 0, false), Error);
  EXPECT_THROW(tree_count(4, 0, 3, false), Error);
  EXPECT_THROW(tree_count(4, 0, 1, true), Error);
}

TEST(Tree, MatchesLocalFactorsExhaustively) {
  for (int g = 0; g <= 8; ++g)
    for (int gp = 0; gp <= g; ++gp) {
      for (int gpp = 0; 2 * gpp <= g - gp; ++gpp) {
        EXPECT_EQ(tree_count(g, gp, gpp, false), local_level_factor(g, gp, gpp, false));
        if (gpp == 0) EXPECT_EQ(tree_count(g, gp, 0, true), local_level_factor(g, gp, 0, true));
      }
      Int sum = 0;
      for (int gpp = 0; 2 * gpp <= g - gp; ++gpp) sum += tree_count(g, gp, gpp, false);
      EXPECT_EQ(sum, local_total_factor(g, gp, false)) << g << " " << gp;
      EXPECT_EQ(tree_count(g, gp, 0, true), local_total_factor(g, gp, true)) << g << " " << gp;
    }
}

TEST(Pell, ClosedForm) {
  EXPECT_FALSE(pell_soluble(5, 2, 2));
  EXPECT_TRUE(pell_soluble(5, 4, 2));
  EXPECT_FALSE(pell_soluble(17, 2, 2));
  EXPECT_TRUE(pell_soluble(5, 1, 3));
  EXPECT_FALSE(pell_soluble(5, 3, 3));  // v_3(3) odd with (5/3) = -1
  EXPECT_THROW(pell_soluble(21, 1, 3), Error);
}

TEST(Pell, BruteForceExamples) {
  const auto r = pell_soluble_bruteforce(5, 1, 3);
  EXPECT_TRUE(r.soluble);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_FALSE(pell_soluble_bruteforce(5, 3, 3).soluble);
  EXPECT_FALSE(pell_soluble_bruteforce(5, 2, 2).soluble);
  EXPECT_TRUE(pell_soluble_bruteforce(5, 4, 2).soluble);
  EXPECT_THROW(pell_soluble_bruteforce(5, 4, 2, 2), Error);
}

TEST(Pell, GridAgreement) {
  for (Int D : {5, 13, 17, 21, 73})
    for (Int p : {2, 3, 5, 7}) {
      if (D % p == 0) continue;
      for (Int A = -50; A <= 50; ++A) {
        if (A == 0) continue;
        EXPECT_EQ(pell_soluble_bruteforce(D, A, p).soluble, pell_soluble(D, A, p)) << D << " " << A << " " << p;
      }
    }
}

TEST(Hilbert, BruteForceGrid) {
  for (Int p : {2, 3, 5, 7, 11})
    for (Int a = -30; a <= 30; ++a)
      for (Int b = -30; b <= 30; ++b) {
        if (!a || !b) continue;
        EXPECT_EQ(hilbert_bruteforce(a, b, p), hilbert_symbol(a, b, Place{p})) << a << " " << b << " " << p;
      }
}

TEST(Hilbert, BruteForceExamples) {
  EXPECT_EQ(hilbert_bruteforce(1, 17, 2), 1);
  EXPECT_EQ(hilbert_bruteforce(5, -1896, 2), -1);
  EXPECT_EQ(hilbert_bruteforce(-1, -1, 2), -1);
}

}  // namespace
}  // namespace linkcount
