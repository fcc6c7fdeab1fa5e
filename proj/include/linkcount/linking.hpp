#pragma once

// The epsilon function, linking profiles and the counts of Eichler orders in
// which an x-linked pair is optimal.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "linkcount/arith.hpp"
#include "linkcount/quadclass.hpp"
#include "linkcount/quatalg.hpp"
#include "linkcount/triple.hpp"

namespace linkcount {

// epsilon(p) from the fundamental parts of D1 and D2; nullopt when undefined.
inline std::optional<int> epsilon(Int p, const Discriminant& d1, const Discriminant& d2) {
  require(p >= 2 && is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  const Int f1 = d1.fundamental_part, f2 = d2.fundamental_part;
  const bool div1 = f1 % p == 0, div2 = f2 % p == 0;
  if (div1 && div2) return std::nullopt;
  const int k1 = kronecker(f1, p), k2 = kronecker(f2, p);
  if (k1 * k2 == -1) return std::nullopt;
  return div1 ? k2 : k1;
}

inline std::optional<int> epsilon(Int p, Int d1, Int d2) {
  return epsilon(p, make_positive_discriminant(d1), make_positive_discriminant(d2));
}

// Values of epsilon on primes, extended multiplicatively.
class EpsilonContext {
 public:
  static EpsilonContext from_discriminants(const Discriminant& d1, const Discriminant& d2) {
    EpsilonContext c;
    c.d1_ = d1;
    c.d2_ = d2;
    return c;
  }

  static EpsilonContext synthetic(std::map<Int, int> values) {
    EpsilonContext c;
    c.table_ = std::move(values);
    return c;
  }

  std::optional<int> at(Int p) const {
    if (d1_) return epsilon(p, *d1_, *d2_);
    auto it = table_.find(p);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  int of(Int n) const {
    require(n >= 1, ErrorCode::InvalidArgument, "epsilon of a non-positive integer");
    int s = 1;
    for (const auto& pp : factorize(n).factors) {
      const auto e = at(pp.prime);
      require(e.has_value(), ErrorCode::UndefinedEpsilon, "epsilon(" + std::to_string(pp.prime) + ") is undefined");
      if (*e == -1 && pp.exponent % 2) s = -s;
    }
    return s;
  }

 private:
  std::optional<Discriminant> d1_, d2_;
  std::map<Int, int> table_;
};

struct ProfilePrime {
  Int prime;
  int valuation;
  bool potentially_bad;
  bool operator==(const ProfilePrime&) const = default;
};

struct LinkingProfile {
  Triple triple;
  std::vector<ProfilePrime> p_list;  // epsilon = -1, odd valuation 2e+1
  std::vector<ProfilePrime> q_list;  // epsilon = -1, even valuation 2f
  std::vector<ProfilePrime> w_list;  // epsilon = +1, valuation g
  std::vector<Int> bad_primes;

  Int candidate_disc() const {
    Int d = 1;
    for (const auto& p : p_list) d = checked_mul(d, p.prime);
    return d;
  }
  int r() const { return static_cast<int>(p_list.size()); }
  int sign() const { return *triple.m > 0 ? 1 : -1; }
};

inline LinkingProfile build_profile(const Triple& t) {
  require_nice(t);
  LinkingProfile prof;
  prof.triple = t;
  prof.bad_primes = potentially_bad_primes(t.d1, t.d2);
  auto is_bad = [&](Int p) { return std::binary_search(prof.bad_primes.begin(), prof.bad_primes.end(), p); };
  for (const auto& pp : factorize(checked_abs(*t.m)).factors) {
    const auto e = epsilon(pp.prime, t.d1, t.d2);
    require(e.has_value(), ErrorCode::UndefinedEpsilon,
            "epsilon(" + std::to_string(pp.prime) + ") is undefined for " + t.str());
    ProfilePrime entry{pp.prime, pp.exponent, is_bad(pp.prime)};
    if (*e == 1)
      prof.w_list.push_back(entry);
    else if (pp.exponent % 2)
      prof.p_list.push_back(entry);
    else
      prof.q_list.push_back(entry);
  }
  return prof;
}

inline LinkingProfile build_profile(Int d1, Int d2, Int x) { return build_profile(classify(d1, d2, x)); }

// Primes p with (D1, x^2 - D1 D2)_p = -1.
inline std::vector<Int> ramified_set(const Triple& t) {
  require_admissible(t);
  QuatAlgebra alg(Rational(t.d1.value), Rational(checked_sub(checked_mul(t.x, t.x), t.product)));
  return alg.ramified_primes();
}

inline void validate_order(Int disc, Int level) {
  require(disc >= 1 && is_squarefree(disc) && omega(disc) % 2 == 0, ErrorCode::InvalidOrder,
          "disc must be a squarefree product of an even number of primes: " + std::to_string(disc));
  require(level >= 1, ErrorCode::InvalidOrder, "level must be positive");
  require(std::gcd(disc, level) == 1, ErrorCode::InvalidOrder, "disc and level must be coprime");
}

inline Int pow2(int e) {
  require(e >= 0 && e < 62, ErrorCode::Overflow, "power of two out of range");
  return Int(1) << e;
}

// Number of Eichler orders above the local Eichler order of level w^g with
// level w^g', among those admitting the pair optimally.
inline Int local_total_factor(int g, int gp, bool bad) {
  require(0 <= gp && gp <= g, ErrorCode::InvalidArgument, "need 0 <= g' <= g");
  if (!bad) return g + 1 - gp;
  return gp < g ? 2 : 1;
}

// Same, restricted to local intersection level w^g''.
inline Int local_level_factor(int g, int gp, int gpp, bool bad) {
  require(0 <= gp && gp <= g && gpp >= 0 && 2 * gpp <= g - gp, ErrorCode::InvalidArgument,
          "need 2 g'' <= g - g'");
  require(!bad || gpp == 0, ErrorCode::InvalidArgument, "g'' must vanish at a potentially bad prime");
  return 2 * gpp < g - gp ? 2 : 1;
}

namespace detail {

// Exponent of the level at each w prime, or nullopt if the level is not of the
// form prod w_i^{g_i'} with g_i' <= g_i.
inline std::optional<std::vector<int>> level_exponents(const LinkingProfile& prof, Int level) {
  std::vector<int> gp(prof.w_list.size(), 0);
  const Factorization f = factorize(level);
  for (const auto& pp : f.factors) {
    bool found = false;
    for (std::size_t i = 0; i < prof.w_list.size(); ++i) {
      if (prof.w_list[i].prime != pp.prime) continue;
      if (pp.exponent > prof.w_list[i].valuation) return std::nullopt;
      gp[i] = pp.exponent;
      found = true;
    }
    if (!found) return std::nullopt;
  }
  return gp;
}

inline bool any_bad_pq(const LinkingProfile& prof) {
  for (const auto* list : {&prof.p_list, &prof.q_list})
    for (const auto& e : *list)
      if (e.potentially_bad) return true;
  return false;
}

}  // namespace detail

// Number of Eichler orders of level `level` in the algebra of discriminant
// `disc` containing the pair optimally, times 2^{omega(disc level)+1}.
inline Int count_linked(const LinkingProfile& prof, Int disc, Int level) {
  validate_order(disc, level);
  if (disc != prof.candidate_disc() || detail::any_bad_pq(prof)) return 0;
  const auto gp = detail::level_exponents(prof, level);
  if (!gp) return 0;
  Int total = pow2(omega(disc) + omega(level) + 1);
  for (std::size_t i = 0; i < prof.w_list.size(); ++i)
    total = checked_mul(total, local_total_factor(prof.w_list[i].valuation, (*gp)[i], prof.w_list[i].potentially_bad));
  return total;
}

// Number of w_i with 2 g_i'' < g_i - g_i', or nullopt if ell is not an
// allowed level of intersection.
inline std::optional<int> level_doubling_count(const LinkingProfile& prof, Int level, Int ell) {
  const auto gp = detail::level_exponents(prof, level);
  if (!gp) return std::nullopt;
  require(ell >= 1, ErrorCode::InvalidArgument, "ell must be positive");
  Int rest = ell;
  auto strip = [&rest](Int p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    return e;
  };
  for (const auto& e : prof.p_list)
    if (strip(e.prime) != (e.valuation - 1) / 2) return std::nullopt;
  for (const auto& e : prof.q_list)
    if (strip(e.prime) != e.valuation / 2) return std::nullopt;
  int n = 0;
  for (std::size_t i = 0; i < prof.w_list.size(); ++i) {
    const auto& w = prof.w_list[i];
    const int gpp = strip(w.prime);
    const int room = w.valuation - (*gp)[i];
    if (2 * gpp > room || (w.potentially_bad && gpp != 0)) return std::nullopt;
    if (2 * gpp < room) ++n;
  }
  if (rest != 1) return std::nullopt;
  return n;
}

inline Int count_linked_level(const LinkingProfile& prof, Int disc, Int level, Int ell) {
  if (count_linked(prof, disc, level) == 0) return 0;
  const auto n = level_doubling_count(prof, level, ell);
  if (!n) return 0;
  return pow2(omega(disc) + omega(level) + *n + 1);
}

// All ell with count_linked_level > 0, ascending.
inline std::vector<Int> admissible_levels(const LinkingProfile& prof, Int disc, Int level) {
  if (count_linked(prof, disc, level) == 0) return {};
  const auto gp = *detail::level_exponents(prof, level);
  Int base = 1;
  for (const auto& e : prof.p_list) base = checked_mul(base, checked_pow(e.prime, (e.valuation - 1) / 2));
  for (const auto& e : prof.q_list) base = checked_mul(base, checked_pow(e.prime, e.valuation / 2));
  std::vector<Int> out{base};
  for (std::size_t i = 0; i < prof.w_list.size(); ++i) {
    const auto& w = prof.w_list[i];
    const int top = w.potentially_bad ? 0 : (w.valuation - gp[i]) / 2;
    std::vector<Int> next;
    for (Int v : out) {
      Int pk = 1;
      for (int k = 0; k <= top; ++k) {
        next.push_back(checked_mul(v, pk));
        pk = checked_mul(pk, w.prime);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct SignSplit {
  Int positive = 0;
  Int negative = 0;
};

inline SignSplit sign_split(Int total, const Triple& t) {
  require(t.x_inside(), ErrorCode::NoSignDefined, "sign is undefined when x^2 > D1 D2");
  if (total % 2) fail(ErrorCode::InternalError, "odd total cannot split by sign");
  return {total / 2, total / 2};
}

struct OrientedCount {
  Int value = 0;
  bool signed_count = true;  // false when x^2 > D1 D2 and both signs merge
};

// Pairs with fixed orientations (and positive sign when x^2 < D1 D2); some
// orientation pairs may give zero.
inline OrientedCount count_oriented_positive(const LinkingProfile& prof, Int disc, Int level, Int ell) {
  validate_order(disc, level);
  require(std::gcd(level, prof.triple.product) == 1, ErrorCode::UnsupportedByCorollary,
          "level must be coprime to D1 D2");
  OrientedCount out;
  out.signed_count = prof.triple.x_inside();
  if (count_linked_level(prof, disc, level, ell) == 0) return out;
  const int n = *level_doubling_count(prof, level, ell);
  out.value = pow2(out.signed_count ? n : n + 1);
  return out;
}

// Orientation-fixed count without the sign restriction, over all levels when
// ell is absent.
inline Int count_oriented(const LinkingProfile& prof, Int disc, Int level, std::optional<Int> ell) {
  validate_order(disc, level);
  require(std::gcd(level, prof.triple.product) == 1, ErrorCode::UnsupportedByCorollary,
          "level must be coprime to D1 D2");
  const Int total = ell ? count_linked_level(prof, disc, level, *ell) : count_linked(prof, disc, level);
  return total / pow2(omega(disc) + omega(level));
}

struct CountQuery {
  Int d1 = 0, d2 = 0, x = 0;
  Int disc = 1, level = 1;
  std::optional<Int> ell;
  bool oriented = false;
  bool positive = false;
};

inline Int evaluate(const CountQuery& q) {
  const LinkingProfile prof = build_profile(q.d1, q.d2, q.x);
  const Int disc = q.disc;
  Int value;
  if (q.oriented && q.positive) {
    if (!q.ell) {
      value = 0;
      for (Int l : admissible_levels(prof, disc, q.level)) value += count_oriented_positive(prof, disc, q.level, l).value;
      if (!prof.triple.x_inside()) fail(ErrorCode::NoSignDefined, "sign is undefined when x^2 > D1 D2");
      return value;
    }
    const auto oc = count_oriented_positive(prof, disc, q.level, *q.ell);
    if (!oc.signed_count) fail(ErrorCode::NoSignDefined, "sign is undefined when x^2 > D1 D2");
    return oc.value;
  }
  if (q.oriented) return count_oriented(prof, disc, q.level, q.ell);
  value = q.ell ? count_linked_level(prof, disc, q.level, *q.ell) : count_linked(prof, disc, q.level);
  if (q.positive) return sign_split(value, prof.triple).positive;
  return value;
}

// Residues x mod 2 disc level, over signed x with x^2 < D1 D2 and nonzero count.
struct CongruenceClass {
  Int residue;
  std::vector<Int> members;
};

inline std::vector<CongruenceClass> x_congruence_classes(Int d1, Int d2, Int disc, Int level) {
  const Discriminant D1 = make_positive_discriminant(d1), D2 = make_positive_discriminant(d2);
  validate_order(disc, level);
  const Int prod = checked_mul(d1, d2);
  const Int mod = checked_mul(2, checked_mul(disc, level));
  std::map<Int, std::vector<Int>> classes;
  const Int s = isqrt(prod);
  for (Int x = -s; x <= s; ++x) {
    const Triple t = classify(D1, D2, x);
    if (!t.nice || !t.x_inside()) continue;
    LinkingProfile prof;
    try {
      prof = build_profile(t);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UndefinedEpsilon) continue;
      throw;
    }
    if (count_linked(prof, disc, level) > 0) classes[mod_floor(x, mod)].push_back(x);
  }
  std::vector<CongruenceClass> out;
  for (auto& [r, xs] : classes) out.push_back({r, std::move(xs)});
  return out;
}

// Optimal embedding classes of discriminant D into an Eichler order of level
// `level` in the indefinite algebra of discriminant `disc`.
inline Int count_embedding_classes(Int disc, Int level, const Discriminant& D) {
  validate_order(disc, level);
  require(std::gcd(D.value < 0 ? -D.value : D.value, level) == 1, ErrorCode::UnsupportedLevel,
          "level must be coprime to D");
  Int total = checked_mul(narrow_class_number(D), D.value > 0 ? 1 : 2);
  for (Int p : prime_divisors(disc)) {
    if (D.conductor % p == 0) return 0;
    total = checked_mul(total, 1 - kronecker(D.value, p));
  }
  for (Int p : prime_divisors(level)) total = checked_mul(total, 1 + kronecker(D.value, p));
  return total;
}

// Positive x >= 0 (x^2 < D1 D2, right parity) with their ramified sets.
struct CandidateEntry {
  Int x;
  std::vector<Int> ramified;
  bool nice;
  std::vector<Int> levels;  // maximal-order levels of intersection when nice
};

inline std::vector<CandidateEntry> candidate_orders(Int d1, Int d2) {
  const Discriminant D1 = make_positive_discriminant(d1), D2 = make_positive_discriminant(d2);
  const Int prod = checked_mul(d1, d2);
  std::vector<CandidateEntry> out;
  const Int s = isqrt(prod);
  for (Int x = 0; x <= s; ++x) {
    const Triple t = classify(D1, D2, x);
    if (!t.admissible || !t.x_inside()) continue;
    CandidateEntry e{x, ramified_set(t), t.nice, {}};
    if (t.nice) {
      try {
        const auto prof = build_profile(t);
        e.levels = admissible_levels(prof, prof.candidate_disc(), 1);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::UndefinedEpsilon) throw;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace linkcount
