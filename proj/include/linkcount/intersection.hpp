#pragma once

// Intersection numbers of optimal embeddings summed over x, the
// Gross-Zagier style valuation function, and intersection angles.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkcount/linking.hpp"

namespace linkcount {

struct LevelCount {
  Int ell;
  Int count;
  bool operator==(const LevelCount&) const = default;
};

struct XEntry {
  Int x;
  Int m;
  Int count;
  std::vector<LevelCount> levels;
  bool operator==(const XEntry&) const = default;
};

struct IntersectionReport {
  Int d1 = 0, d2 = 0, disc = 1, level = 1;
  std::vector<XEntry> per_x;
  Int total_unsigned = 0;
  Int total_signed = 0;
  std::map<Int, Int> q_weighted;
  bool operator==(const IntersectionReport&) const = default;
};

// Sum over all x with x^2 < D1 D2 of the pair counts, with level and sign
// breakdowns.  Every admissible x must give a nice triple.
inline IntersectionReport total_intersection(Int d1, Int d2, Int disc, Int level,
                                             const std::vector<Int>& extra_q = {}) {
  const Discriminant D1 = make_positive_discriminant(d1), D2 = make_positive_discriminant(d2);
  validate_order(disc, level);
  for (Int q : extra_q) require(is_prime(q), ErrorCode::InvalidArgument, std::to_string(q) + " is not prime");
  IntersectionReport rep;
  rep.d1 = d1;
  rep.d2 = d2;
  rep.disc = disc;
  rep.level = level;
  const Int prod = checked_mul(d1, d2);
  const Int s = isqrt(prod);
  std::set<Int> qs(extra_q.begin(), extra_q.end());
  for (Int p : prime_divisors(disc)) qs.insert(p);
  for (Int x = -s; x <= s; ++x) {
    const Triple t = classify(D1, D2, x);
    if (!t.admissible || !t.x_inside()) continue;
    require(t.nice, ErrorCode::NotNice, "x = " + std::to_string(x) + " gives a non-nice triple " + t.str());
    const LinkingProfile prof = build_profile(t);
    XEntry e{x, *t.m, count_linked(prof, disc, level), {}};
    for (Int ell : admissible_levels(prof, disc, level)) {
      e.levels.push_back({ell, count_linked_level(prof, disc, level, ell)});
      for (Int p : prime_divisors(ell)) qs.insert(p);
    }
    const SignSplit split = sign_split(e.count, t);
    rep.total_unsigned = checked_add(rep.total_unsigned, e.count);
    rep.total_signed = checked_add(rep.total_signed, split.positive - split.negative);
    rep.per_x.push_back(std::move(e));
  }
  for (Int q : qs) {
    Int acc = 0;
    for (const auto& e : rep.per_x)
      for (const auto& lc : e.levels) {
        int v = 0;
        for (Int l = lc.ell; l % q == 0; l /= q) ++v;
        acc = checked_add(acc, checked_mul(1 + v, lc.count));
      }
    rep.q_weighted[q] = acc;
  }
  return rep;
}

// v_l(F_GZ(m)) = sum over n n' = m of v_l(n) eps(n'), for each prime l | m.
inline std::map<Int, Int> gz_F(Int m, const EpsilonContext& ctx) {
  require(m >= 1, ErrorCode::InvalidArgument, "m must be positive");
  const Factorization f = factorize(m);
  std::vector<int> eps;
  for (const auto& pp : f.factors) {
    const auto e = ctx.at(pp.prime);
    require(e.has_value(), ErrorCode::UndefinedEpsilon, "epsilon(" + std::to_string(pp.prime) + ") is undefined");
    eps.push_back(*e);
  }
  std::map<Int, Int> out;
  const std::size_t k = f.factors.size();
  // mixed-radix walk over exponent vectors of n
  std::vector<int> a(k, 0);
  std::vector<Int> acc(k, 0);
  for (;;) {
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i)
      if (eps[i] == -1 && (f.factors[i].exponent - a[i]) % 2) sign = -sign;
    for (std::size_t i = 0; i < k; ++i) acc[i] += a[i] * sign;
    std::size_t i = 0;
    while (i < k && a[i] == f.factors[i].exponent) a[i++] = 0;
    if (i == k) break;
    ++a[i];
  }
  for (std::size_t i = 0; i < k; ++i) out[f.factors[i].prime] = acc[i];
  return out;
}

struct GzComparison {
  int r = 0;
  std::map<Int, Int> valuations;
  std::map<Int, Int> predicted;
  bool agreement = false;
};

// Compare gz_F against the law: all valuations vanish unless r = 1, and then
// v_{p1} = (e1 + 1) prod (g_i + 1).
inline GzComparison gz_compare_context(Int m, const EpsilonContext& ctx) {
  GzComparison out;
  out.valuations = gz_F(m, ctx);
  const Factorization f = factorize(m);
  std::vector<PrimePower> odd_minus;
  Int w_prod = 1;
  for (const auto& pp : f.factors) {
    const int e = *ctx.at(pp.prime);
    if (e == -1 && pp.exponent % 2) odd_minus.push_back(pp);
    if (e == 1) w_prod = checked_mul(w_prod, pp.exponent + 1);
  }
  out.r = static_cast<int>(odd_minus.size());
  for (const auto& pp : f.factors) out.predicted[pp.prime] = 0;
  if (out.r == 1) out.predicted[odd_minus[0].prime] = checked_mul((odd_minus[0].exponent - 1) / 2 + 1, w_prod);
  out.agreement = out.valuations == out.predicted;
  return out;
}

inline GzComparison gz_compare(Int d1, Int d2, Int x) {
  const Triple t = require_nice(classify(d1, d2, x));
  return gz_compare_context(checked_abs(*t.m), EpsilonContext::from_discriminants(t.d1, t.d2));
}

// tan(theta) = sqrt(radicand) / x, theta in (0, pi).
struct Angle {
  Int radicand;
  Int x;
  double radians() const { return std::atan2(std::sqrt(static_cast<double>(radicand)), static_cast<double>(x)); }
};

inline Angle intersection_angle(Int d1, Int d2, Int x) {
  const Triple t = classify(d1, d2, x);
  require(t.x_inside(), ErrorCode::NoTransversalIntersection, "x^2 >= D1 D2 gives no transversal intersection");
  return {checked_sub(t.product, checked_mul(x, x)), x};
}

}  // namespace linkcount
