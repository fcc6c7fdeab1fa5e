#pragma once

// Machine-integer number theory: checked arithmetic, factorization,
// Kronecker symbols and valuations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "linkcount/error.hpp"

namespace linkcount {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "addition overflows int64");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::Overflow, "subtraction overflows int64");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "multiplication overflows int64");
  return r;
}

inline Int checked_abs(Int a) {
  if (a == INT64_MIN) fail(ErrorCode::Overflow, "abs overflows int64");
  return a < 0 ? -a : a;
}

inline Int checked_pow(Int base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// Floor of the square root of n >= 0.
inline Int isqrt(Int n) {
  require(n >= 0, ErrorCode::InvalidArgument, "isqrt of negative number");
  auto r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_square(Int n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + (m < 0 ? -m : m) : r;
}

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline constexpr Int kTrialBound = 1000000;

inline const std::vector<Int>& small_primes() {
  static const std::vector<Int> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<Int> out;
    for (Int i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (Int j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::powmod(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Brent's variant of Pollard rho; n odd composite.
inline std::uint64_t rho_factor(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split_large(Int n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  auto d = static_cast<Int>(rho_factor(static_cast<std::uint64_t>(n)));
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace detail

struct PrimePower {
  Int prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // ascending primes

  Int value() const {
    Int v = sign;
    for (const auto& pp : factors) v = checked_mul(v, checked_pow(pp.prime, pp.exponent));
    return v;
  }

  int exponent_of(Int p) const {
    for (const auto& pp : factors)
      if (pp.prime == p) return pp.exponent;
    return 0;
  }

  std::vector<Int> primes() const {
    std::vector<Int> out;
    for (const auto& pp : factors) out.push_back(pp.prime);
    return out;
  }
};

inline Factorization factorize(Int n) {
  require(n != 0, ErrorCode::InvalidArgument, "cannot factor 0");
  Factorization f;
  if (n < 0) {
    f.sign = -1;
    n = checked_abs(n);
  }
  for (Int p : detail::small_primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (n > 1) {
    std::vector<Int> rest;
    detail::split_large(n, rest);
    std::sort(rest.begin(), rest.end());
    for (Int p : rest) {
      if (!f.factors.empty() && f.factors.back().prime == p)
        ++f.factors.back().exponent;
      else
        f.factors.push_back({p, 1});
    }
  }
  return f;
}

inline std::vector<Int> prime_divisors(Int n) { return factorize(n).primes(); }

inline int omega(Int n) { return static_cast<int>(factorize(n).factors.size()); }

inline bool is_squarefree(Int n) {
  for (const auto& pp : factorize(n).factors)
    if (pp.exponent > 1) return false;
  return true;
}

// All positive divisors, ascending.
inline std::vector<Int> divisors(const Factorization& f) {
  std::vector<Int> out{1};
  for (const auto& pp : f.factors) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Int> divisors(Int n) { return divisors(factorize(n)); }

inline std::vector<Int> primes_up_to(Int bound) {
  std::vector<Int> out;
  if (bound <= detail::kTrialBound) {
    for (Int p : detail::small_primes()) {
      if (p > bound) break;
      out.push_back(p);
    }
    return out;
  }
  out = detail::small_primes();
  for (Int n = detail::kTrialBound + 1; n <= bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline int valuation(Int n, Int p) {
  require(n != 0, ErrorCode::InvalidArgument, "valuation of 0");
  require(p >= 2 && is_prime(p), ErrorCode::InvalidArgument, "valuation base must be prime");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Kronecker symbol (a/n), defined for all integers.
inline int kronecker(Int a, Int n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = checked_abs(n);
    if (a < 0) result = -1;
  }
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    Int r8 = mod_floor(a, 8);
    if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // n odd positive: Jacobi symbol
  a = mod_floor(a, n);
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      Int r8 = n % 8;
      if (r8 == 3 || r8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline Int lcm_checked(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_abs(checked_mul(a / std::gcd(a, b), b));
}

}  // namespace linkcount
