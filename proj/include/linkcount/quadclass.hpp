#pragma once

// Quadratic discriminants, binary quadratic forms, narrow class numbers and
// the fundamental solution of T^2 - D U^2 = 4.

#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "linkcount/arith.hpp"
#include "linkcount/numeric.hpp"

namespace linkcount {

struct Discriminant {
  Int value = 0;
  Int fundamental_part = 0;
  Int conductor = 1;
  int parity = 0;  // value mod 2

  bool is_fundamental() const { return conductor == 1; }
  bool operator==(const Discriminant&) const = default;
};

inline Discriminant make_discriminant(Int n) {
  require(n != 0, ErrorCode::NotADiscriminant, "0 is not a discriminant");
  const Int r = mod_floor(n, 4);
  require(r == 0 || r == 1, ErrorCode::NotADiscriminant,
          std::to_string(n) + " is not congruent to 0 or 1 mod 4");
  require(!is_square(n), ErrorCode::NotADiscriminant, std::to_string(n) + " is a perfect square");
  const Factorization f = factorize(n);
  Int core = f.sign;
  for (const auto& pp : f.factors)
    if (pp.exponent % 2) core *= pp.prime;
  const Int fund = mod_floor(core, 4) == 1 ? core : checked_mul(core, 4);
  const Int conductor = isqrt(n / fund);
  if (conductor * conductor * fund != n) fail(ErrorCode::InternalError, "conductor computation");
  return {n, fund, conductor, static_cast<int>(mod_floor(n, 2))};
}

inline Discriminant make_positive_discriminant(Int n) {
  require(n > 0, ErrorCode::InvalidArgument, "discriminant must be positive: " + std::to_string(n));
  return make_discriminant(n);
}

// Primes dividing the conductors of D1 and D2.
inline std::vector<Int> potentially_bad_primes(const Discriminant& d1, const Discriminant& d2) {
  std::set<Int> s;
  for (Int p : prime_divisors(d1.conductor)) s.insert(p);
  for (Int p : prime_divisors(d2.conductor)) s.insert(p);
  return {s.begin(), s.end()};
}

struct QuadForm {
  Int a = 0, b = 0, c = 0;

  Int discriminant() const { return checked_sub(checked_mul(b, b), checked_mul(checked_mul(4, a), c)); }
  bool primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
  auto operator<=>(const QuadForm&) const = default;
};

// Integer test of sqrt(D) - b < 2|a| < sqrt(D) + b with 0 < b < sqrt(D).
inline bool is_reduced_indefinite(const QuadForm& f, Int D) {
  if (f.b <= 0 || checked_mul(f.b, f.b) >= D) return false;
  const Int a2 = checked_mul(2, checked_abs(f.a));
  const Int lo = a2 + f.b;          // need D < lo^2
  const Int hi = a2 - f.b;          // need hi < 0 or hi^2 < D
  const bool upper_ok = hi < 0 || checked_mul(hi, hi) < D;
  return checked_mul(lo, lo) > D && upper_ok;
}

inline std::vector<QuadForm> reduced_indefinite_forms(Int D, bool primitive_only = true) {
  require(D > 0 && !is_square(D), ErrorCode::InvalidArgument, "indefinite discriminant required");
  const Int s = isqrt(D);
  std::vector<QuadForm> out;
  for (Int b = (D % 2 == 0 ? 2 : 1); b <= s; b += 2) {
    const Int n = (D - b * b) / 4;  // a*c = -n
    const Int lo = std::max<Int>(1, (s - b) / 2);
    const Int hi = (s + b) / 2 + 1;
    for (Int a = lo; a <= hi; ++a) {
      if (n % a) continue;
      for (Int sa : {a, -a}) {
        QuadForm f{sa, b, -n / sa};
        if (!is_reduced_indefinite(f, D)) continue;
        if (primitive_only && !f.primitive()) continue;
        out.push_back(f);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RhoStep {
  QuadForm form;
  Int t;  // substitution matrix [[0,-1],[1,t]]
};

inline RhoStep rho_step(const QuadForm& f, Int D) {
  require(f.c != 0, ErrorCode::InvalidArgument, "rho needs c != 0");
  const Int s = isqrt(D);
  const Int m = checked_mul(2, checked_abs(f.c));
  // largest b' <= s with b' = -b mod 2|c|
  const Int bp = s - mod_floor(s + f.b, m);
  const Int num = checked_add(bp, f.b);
  const Int t = num / (2 * f.c);
  const Int cnew = checked_sub(checked_mul(bp, bp), D) / checked_mul(4, f.c);
  return {{f.c, bp, cnew}, t};
}

inline QuadForm rho(const QuadForm& f, Int D) { return rho_step(f, D).form; }

inline std::vector<QuadForm> reduced_definite_forms(Int D) {
  require(D < 0, ErrorCode::InvalidArgument, "definite discriminant required");
  std::vector<QuadForm> out;
  const Int n = -D;
  for (Int a = 1; 3 * a * a <= n; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      if (mod_floor(b - D, 2) != 0) continue;
      const Int num = b * b - D;
      if (num % (4 * a)) continue;
      const Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      QuadForm f{a, b, c};
      if (f.primitive()) out.push_back(f);
    }
  }
  return out;
}

// h+(D): number of proper equivalence classes of primitive forms, positive
// definite ones only when D < 0.
inline Int narrow_class_number(const Discriminant& d) {
  const Int D = d.value;
  if (D < 0) return static_cast<Int>(reduced_definite_forms(D).size());
  const auto forms = reduced_indefinite_forms(D);
  std::set<QuadForm> seen;
  Int cycles = 0;
  for (const auto& f : forms) {
    if (seen.count(f)) continue;
    ++cycles;
    QuadForm g = f;
    for (std::size_t steps = 0;; ++steps) {
      if (steps > forms.size()) fail(ErrorCode::InternalError, "rho cycle did not close");
      seen.insert(g);
      g = rho(g, D);
      if (g == f) break;
    }
  }
  return cycles;
}

struct PellSolution {
  BigInt t, u;
  bool operator==(const PellSolution&) const = default;
};

// Smallest positive solution of T^2 - D U^2 = 4, from the rho cycle of the
// principal form.
inline PellSolution pell_fundamental(const Discriminant& d) {
  const Int D = d.value;
  require(D > 0, ErrorCode::InvalidArgument, "Pell equation needs D > 0");
  const Int s = isqrt(D);
  const Int b = (s % 2 == D % 2) ? s : s - 1;
  const QuadForm start{1, b, (b * b - D) / 4};
  BigInt m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  QuadForm g = start;
  for (std::size_t steps = 0;; ++steps) {
    if (steps > static_cast<std::size_t>(4 * D + 8)) fail(ErrorCode::InternalError, "principal cycle did not close");
    const RhoStep st = rho_step(g, D);
    const BigInt n11 = m12, n12 = -m11 + m12 * st.t;
    const BigInt n21 = m22, n22 = -m21 + m22 * st.t;
    m11 = n11; m12 = n12; m21 = n21; m22 = n22;
    g = st.form;
    if (g == start) break;
  }
  BigInt t = m11 + m22;
  if (t < 0) t = -t;
  BigInt u = m21;
  if (u < 0) u = -u;
  if (t * t - BigInt(D) * u * u != 4) fail(ErrorCode::InternalError, "Pell automorph check failed");
  return {t, u};
}

}  // namespace linkcount
