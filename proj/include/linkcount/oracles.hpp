#pragma once

// Independent verifiers: p-adic solubility by digit-by-digit search with
// Hensel certificates, and the interval model of Eichler superorders.
//
// Interval model.  Maximal orders containing a local Eichler order of level
// w^g are the vertices 0..g of a path in the Bruhat-Tits tree; an Eichler
// superorder of level w^k is a sub-path [a, a+k].  Containment of orders is
// reverse containment of paths:
//
//     O(w^k) = [k, g-k]          0 ----- k ======= g-k ----- g
//     E contains O(w^k)   <=>    path(E) is a sub-interval of [k, g-k]

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linkcount/arith.hpp"
#include "linkcount/numeric.hpp"
#include "linkcount/quatalg.hpp"

namespace linkcount {

struct IntervalOrder {
  int g = 0;
  int a = 0, b = 0;

  int level_exponent() const { return b - a; }
  bool inside(int lo, int hi) const { return lo <= a && b <= hi; }
};

// Intervals [a, a+g'] in [0, g] inside [g'', g-g''], not inside
// [g''+1, g-g''-1], and (if pb) not inside [1, g-1].
inline Int tree_count(int g, int gp, int gpp, bool pb) {
  require(g >= 0 && gp >= 0 && gp <= g, ErrorCode::InvalidArgument, "need 0 <= g' <= g");
  require(gpp >= 0 && 2 * gpp <= g - gp, ErrorCode::InvalidArgument, "need 2 g'' <= g - g'");
  require(!pb || gpp == 0, ErrorCode::InvalidArgument, "g'' must vanish when pb");
  Int n = 0;
  for (int a = 0; a + gp <= g; ++a) {
    const IntervalOrder e{g, a, a + gp};
    if (!e.inside(gpp, g - gpp)) continue;
    if (e.inside(gpp + 1, g - gpp - 1)) continue;
    if (pb && e.inside(1, g - 1)) continue;
    ++n;
  }
  return n;
}

// Closed-form local solubility of X^2 - D Y^2 = A over Z_p.
inline bool pell_soluble(Int D, Int A, Int p) {
  require(p >= 2 && is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  require(D > 0 && D % p != 0, ErrorCode::InvalidArgument, "need D > 0 coprime to p");
  require(A != 0, ErrorCode::InvalidArgument, "A must be nonzero");
  const int k = kronecker(D, p);
  const int v = valuation(A, p);
  if (k == 1) return p != 2 || v != 1;
  return v % 2 == 0;
}

struct PadicPoint {
  Int s = 0, t = 0;
  int precision = 0;
};

enum class SearchOutcome { Certified, Exhausted, Undecided };

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Undecided;
  std::optional<PadicPoint> point;
};

namespace detail {

using I128 = __int128;

inline int val128(I128 v, Int p, int cap) {
  if (v == 0) return cap;
  int e = 0;
  while (v % p == 0 && e < cap) {
    v /= p;
    ++e;
  }
  return e;
}

inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const BigInt q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  if (r0 != 1) fail(ErrorCode::InternalError, "no modular inverse");
  return ((s0 % m) + m) % m;
}

inline int big_val(BigInt v, Int p) {
  if (v == 0) return 1 << 20;
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

// One Newton step for c1 s^2 + c2 t^2 + c0 in the variable with the smaller
// derivative valuation; true if the residual valuation strictly grows.
inline bool newton_grows(Int c1, Int c2, Int c0, Int p, const PadicPoint& pt) {
  const BigInt s = pt.s, t = pt.t;
  auto f = [&](const BigInt& u, const BigInt& v) { return BigInt(c1) * u * u + BigInt(c2) * v * v + BigInt(c0); };
  const BigInt f0 = f(s, t);
  if (f0 == 0) return true;
  const int v0 = big_val(f0, p);
  const BigInt ds = BigInt(2 * c1) * s, dt = BigInt(2 * c2) * t;
  const bool use_s = big_val(ds, p) <= big_val(dt, p);
  const BigInt d = use_s ? ds : dt;
  const int delta = big_val(d, p);
  BigInt pd = 1;
  for (int i = 0; i < delta; ++i) pd *= p;
  BigInt mod = 1;
  for (int i = 0; i < 2 * v0 + 2; ++i) mod *= p;
  const BigInt step = ((f0 / pd) * mod_inverse(d / pd, mod)) % mod;
  const BigInt f1 = use_s ? f(s - step, t) : f(s, t - step);
  return f1 == 0 || big_val(f1, p) > v0;
}

struct ConicSearch {
  Int c1, c2, c0, p;
  int depth;
  bool reached_depth = false;
  std::optional<PadicPoint> hit;

  I128 eval(I128 s, I128 t) const { return I128(c1) * s * s + I128(c2) * t * t + I128(c0); }

  // (s, t) satisfies the equation mod p^k.
  void dfs(Int s, Int t, int k, Int pk) {
    if (hit) return;
    if (k >= 1) {
      const int cap = 4 * depth + 8;
      const int vf = val128(eval(s, t), p, cap);
      const int vd = std::min(val128(I128(2 * c1) * s, p, cap), val128(I128(2 * c2) * t, p, cap));
      if (vf > 2 * vd) {
        hit = PadicPoint{s, t, k};
        return;
      }
    }
    if (k == depth) {
      reached_depth = true;
      return;
    }
    const Int next = pk * p;
    for (Int i = 0; i < p && !hit; ++i) {
      for (Int j = 0; j < p && !hit; ++j) {
        const Int s2 = s + i * pk, t2 = t + j * pk;
        if (eval(s2, t2) % next == 0) dfs(s2, t2, k + 1, next);
      }
    }
  }
};

}  // namespace detail

// Z_p-points of c1 s^2 + c2 t^2 + c0 = 0, searched to depth K.
inline SearchResult padic_conic_search(Int c1, Int c2, Int c0, Int p, int K) {
  require(K >= 1, ErrorCode::InvalidArgument, "precision must be positive");
  Int pk = 1;
  int depth = 0;
  while (depth < K && pk <= (Int(1) << 40) / p) {
    pk *= p;
    ++depth;
  }
  detail::ConicSearch cs{c1, c2, c0, p, depth};
  cs.dfs(0, 0, 0, 1);
  SearchResult out;
  if (cs.hit) {
    if (!detail::newton_grows(c1, c2, c0, p, *cs.hit))
      fail(ErrorCode::InternalError, "Hensel certificate did not refine");
    out.outcome = SearchOutcome::Certified;
    out.point = cs.hit;
  } else {
    out.outcome = cs.reached_depth ? SearchOutcome::Undecided : SearchOutcome::Exhausted;
  }
  return out;
}

struct BruteForceResult {
  bool soluble = false;
  int precision = 0;
  std::optional<PadicPoint> certificate;
  int variant = 0;  // hilbert: which coordinate was fixed to 1 (0 = Z, 1 = Y, 2 = X)
};

inline BruteForceResult pell_soluble_bruteforce(Int D, Int A, Int p, int K) {
  require(p >= 2 && is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  require(A != 0, ErrorCode::InvalidArgument, "A must be nonzero");
  require(K >= valuation(checked_mul(4, A), p) + 3, ErrorCode::InvalidArgument, "precision below v_p(4A) + 3");
  const auto r = padic_conic_search(1, -D, -A, p, K);
  if (r.outcome == SearchOutcome::Undecided)
    fail(ErrorCode::PrecisionInsufficient, "no certified solution at precision " + std::to_string(K));
  return {r.outcome == SearchOutcome::Certified, K, r.point, 0};
}

inline int default_pell_precision(Int A, Int p) { return valuation(checked_mul(4, A), p) + 5; }

// Retries with doubled precision on PrecisionInsufficient, at most 3 times.
template <class F>
inline auto with_precision_ladder(int K, F&& attempt) {
  for (int tries = 0;; ++tries, K *= 2) {
    try {
      return attempt(K);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionInsufficient || tries == 3) throw;
    }
  }
}

inline BruteForceResult pell_soluble_bruteforce(Int D, Int A, Int p) {
  return with_precision_ladder(default_pell_precision(A, p),
                               [&](int K) { return pell_soluble_bruteforce(D, A, p, K); });
}

// (a,b)_p by searching primitive a X^2 + b Y^2 = Z^2 with one coordinate 1.
inline BruteForceResult hilbert_bruteforce(Int a, Int b, Int p, int K) {
  require(a != 0 && b != 0, ErrorCode::InvalidArgument, "a and b must be nonzero");
  require(p >= 2 && is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  const Int variants[3][3] = {{a, b, -1}, {a, -1, b}, {b, -1, a}};
  bool undecided = false;
  for (int v = 0; v < 3; ++v) {
    const auto r = padic_conic_search(variants[v][0], variants[v][1], variants[v][2], p, K);
    if (r.outcome == SearchOutcome::Certified) return {true, K, r.point, v};
    if (r.outcome == SearchOutcome::Undecided) undecided = true;
  }
  if (undecided) fail(ErrorCode::PrecisionInsufficient, "Hilbert search undecided at precision " + std::to_string(K));
  return {false, K, std::nullopt, 0};
}

inline int default_hilbert_precision(Int a, Int b, Int p) {
  return valuation(checked_mul(4, checked_mul(a, b)), p) + 5;
}

inline int hilbert_bruteforce(Int a, Int b, Int p) {
  const auto r = with_precision_ladder(default_hilbert_precision(a, b, p),
                                       [&](int K) { return hilbert_bruteforce(a, b, p, K); });
  return r.soluble ? 1 : -1;
}

}  // namespace linkcount
