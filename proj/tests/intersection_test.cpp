#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "linkcount/intersection.hpp"

namespace linkcount {
namespace {

// Direct divisor sum: v_l(F) = sum_{d | m} v_l(m/d) eps(d).
std::map<Int, Int> divisor_sum_gz(Int m, const std::map<Int, int>& eps) {
  std::map<Int, Int> out;
  for (Int l = 2; l <= m; ++l) {
    if (m % l || !is_prime(l)) continue;
    Int acc = 0;
    for (Int d = 1; d <= m; ++d) {
      if (m % d) continue;
      Int n = m / d, v = 0;
      while (n % l == 0) {
        n /= l;
        ++v;
      }
      int s = 1;
      Int rest = d;
      for (const auto& [p, e] : eps) {
        while (rest % p == 0) {
          rest /= p;
          s *= e;
        }
      }
      acc += v * s;
    }
    out[l] = acc;
  }
  return out;
}

TEST(Total, Disc1For5And381) {
  const auto rep = total_intersection(5, 381, 1, 1);
  std::set<Int> nonzero;
  for (const auto& e : rep.per_x)
    if (e.count) nonzero.insert(e.x);
  EXPECT_EQ(nonzero, (std::set<Int>{-31, -25, -17, -7, 7, 17, 25, 31}));
  EXPECT_EQ(rep.total_signed, 0);
}

TEST(Total, Disc6For5And381) {
  const auto rep = total_intersection(5, 381, 6, 1);
  EXPECT_EQ(rep.total_unsigned, 128);
  EXPECT_EQ(rep.total_signed, 0);
  Int from_levels = 0;
  for (const auto& e : rep.per_x)
    for (const auto& lc : e.levels) from_levels += lc.count;
  EXPECT_EQ(from_levels, rep.total_unsigned);
  // levels are 2 at x = +-9 (m = 2^3 3 19) and 4 at x = +-39 (m = 2^5 3)
  ASSERT_TRUE(rep.q_weighted.count(2));
  EXPECT_EQ(rep.q_weighted.at(2), 128 + 2 * 16 + 2 * 2 * 8);
}

TEST(Total, QWeightCountsLevelValuation) {
  const auto rep = total_intersection(73, 937, 35, 1, {3});
  Int want = 0;
  for (const auto& e : rep.per_x)
    for (const auto& lc : e.levels) {
      Int v = 0;
      for (Int l = lc.ell; l % 3 == 0; l /= 3) ++v;
      want += (1 + v) * lc.count;
    }
  EXPECT_EQ(rep.q_weighted.at(3), want);
}

TEST(Total, RejectsBadOrders) {
  EXPECT_THROW(total_intersection(5, 381, 2, 1), Error);
  EXPECT_THROW(total_intersection(5, 381, 6, 2), Error);
}

TEST(Gz, MatchesDivisorSum) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> dm(1, 3000);
  for (int t = 0; t < 200; ++t) {
    const Int m = dm(rng);
    std::map<Int, int> eps;
    for (Int p : prime_divisors(m)) eps[p] = rng() % 2 ? 1 : -1;
    EXPECT_EQ(gz_F(m, EpsilonContext::synthetic(eps)), divisor_sum_gz(m, eps)) << m;
  }
}

TEST(Gz, LawForOddR) {
  // m = 3 * 5^2 * 7, eps(3) = -1, eps(5) = +1, eps(7) = +1
  const auto cmp = gz_compare_context(525, EpsilonContext::synthetic({{3, -1}, {5, 1}, {7, 1}}));
  EXPECT_EQ(cmp.r, 1);
  EXPECT_EQ(cmp.valuations.at(3), 6);
  EXPECT_TRUE(cmp.agreement);
}

TEST(Gz, ReferenceTriple) {
  const auto cmp = gz_compare(73, 937, 89);
  EXPECT_EQ(cmp.r, 2);
  EXPECT_TRUE(cmp.agreement);
  for (const auto& [l, v] : cmp.valuations) EXPECT_EQ(v, 0) << l;
}

TEST(Gz, LawFailsWhenREqualsZero) {
  // m = w prime with eps(w) = +1: F = w, so v_w = 1 although r = 0
  const auto cmp = gz_compare_context(29, EpsilonContext::synthetic({{29, 1}}));
  EXPECT_EQ(cmp.r, 0);
  EXPECT_EQ(cmp.valuations.at(29), 1);
  EXPECT_FALSE(cmp.agreement);
}

TEST(Angle, Values) {
  const auto a = intersection_angle(5, 381, 3);
  EXPECT_EQ(a.radicand, 1896);
  EXPECT_NEAR(a.radians(), std::atan(std::sqrt(1896.0) / 3), 1e-12);
  EXPECT_NEAR(intersection_angle(5, 381, 0).radians(), M_PI / 2, 1e-12);
  EXPECT_GT(intersection_angle(5, 381, -3).radians(), M_PI / 2);
  try {
    intersection_angle(5, 381, 45);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoTransversalIntersection);
  }
}

}  // namespace
}  // namespace linkcount
