#pragma once

// Self-check suites behind `linkcount verify`.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkcount/intersection.hpp"
#include "linkcount/linking.hpp"
#include "linkcount/oracles.hpp"
#include "linkcount/quatalg.hpp"

namespace linkcount {

struct StudyReport {
  std::string name;
  Int checked = 0;
  Int failed = 0;
  std::vector<std::string> counterexamples;  // first few only

  bool passed() const { return failed == 0; }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++checked;
    if (ok) return;
    ++failed;
    if (counterexamples.size() < 20) counterexamples.push_back(describe());
  }
};

namespace reference {

inline const std::vector<std::pair<Int, int>>& epsilon_5_381() {
  static const std::vector<std::pair<Int, int>> t{{2, -1}, {3, -1}, {5, 1},   {7, -1},  {17, -1}, {19, 1},
                                                 {29, 1}, {31, 1}, {43, -1}, {47, -1}, {59, 1},  {61, 1},
                                                 {67, -1}, {79, 1}, {89, 1}, {97, -1}};
  return t;
}

inline const std::map<std::vector<Int>, std::vector<Int>>& algebras_5_381() {
  static const std::map<std::vector<Int>, std::vector<Int>> t{
      {{}, {7, 17, 25, 31}}, {{2, 3}, {3, 9, 21, 27, 39}}, {{2, 7}, {13, 29, 41, 43}},
      {{2, 17}, {35}},       {{2, 43}, {23}},              {{2, 47}, {5}},
      {{2, 67}, {37}},       {{2, 193}, {19}},             {{2, 223}, {11}},
      {{3, 7}, {15}},        {{3, 17}, {33}},              {{7, 17}, {1}}};
  return t;
}

struct OrientedColumn {
  Int d1, d2, x, disc, level;
  std::map<Int, Int> by_ell;
};

inline const std::vector<OrientedColumn>& oriented_columns() {
  static const std::vector<OrientedColumn> t{
      {73, 937, 89, 35, 1, {{1, 4}, {2, 4}, {3, 4}, {4, 2}, {6, 4}, {12, 2}}},
      {73, 937, 89, 35, 3, {{1, 4}, {2, 4}, {3, 2}, {4, 2}, {6, 2}, {12, 1}}},
      {241, 2736, 324, 77, 1, {{1, 8}, {5, 4}}}};
  return t;
}

struct EmbeddingClassRow {
  Int disc, level, D, classes;
};

inline const std::vector<EmbeddingClassRow>& embedding_classes() {
  static const std::vector<EmbeddingClassRow> t{{6, 1, 5, 4},   {6, 1, 381, 4}, {35, 1, 73, 4},
                                                {35, 1, 937, 4}, {35, 3, 73, 8}, {35, 3, 937, 8}};
  return t;
}

}  // namespace reference

// Map positive x to ramified sets, grouped by set.
inline std::map<std::vector<Int>, std::vector<Int>> algebra_classes(Int d1, Int d2) {
  std::map<std::vector<Int>, std::vector<Int>> out;
  for (const auto& e : candidate_orders(d1, d2))
    if (e.x > 0) out[e.ramified].push_back(e.x);
  return out;
}

inline std::map<Int, Int> oriented_positive_by_level(Int d1, Int d2, Int x, Int disc, Int level) {
  const LinkingProfile prof = build_profile(d1, d2, x);
  std::map<Int, Int> out;
  for (Int ell : admissible_levels(prof, disc, level)) {
    const Int v = count_oriented_positive(prof, disc, level, ell).value;
    if (v) out[ell] = v;
  }
  return out;
}

inline StudyReport verify_hilbert(std::uint64_t seed = 1, int random_pairs = 1000, Int box = 30) {
  StudyReport rep{"hilbert"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> mag(1, 1000000);
  for (int i = 0; i < random_pairs; ++i) {
    Int a = mag(rng), b = mag(rng);
    if (rng() % 2) a = -a;
    if (rng() % 2) b = -b;
    Rational ra(a), rb(b);
    if (i % 2) ra /= Rational(std::uniform_int_distribution<Int>(1, 1000)(rng));
    const auto places = ramified_places(ra, rb);
    std::set<Int> primes{0};
    for (Int p : prime_divisors(checked_mul(2, checked_mul(a, b)))) primes.insert(p);
    for (Int p : prime_divisors(to_int64(den(ra)))) primes.insert(p);
    int product = 1;
    for (Int p : primes) product *= hilbert_symbol(ra, rb, p == 0 ? Place::infinity() : Place::finite(p));
    rep.record(product == 1 && places.size() % 2 == 0, [&] {
      return "product formula at (" + to_string(ra) + ", " + to_string(rb) + ")";
    });
  }
  for (Int p : primes_up_to(11))
    for (Int a = -box; a <= box; ++a)
      for (Int b = -box; b <= box; ++b) {
        if (!a || !b) continue;
        const int want = hilbert_symbol(Rational(a), Rational(b), Place::finite(p));
        const int got = hilbert_bruteforce(a, b, p);
        rep.record(want == got, [&] {
          std::ostringstream s;
          s << "(" << a << "," << b << ")_" << p << ": closed form " << want << ", search " << got;
          return s.str();
        });
      }
  return rep;
}

inline StudyReport verify_pell() {
  StudyReport rep{"pell"};
  for (Int D : {5, 13, 17, 21, 73})
    for (Int p : {2, 3, 5, 7}) {
      if (D % p == 0) continue;
      for (Int A = -50; A <= 50; ++A) {
        if (!A) continue;
        const bool want = pell_soluble(D, A, p);
        const bool got = pell_soluble_bruteforce(D, A, p).soluble;
        rep.record(want == got, [&] {
          std::ostringstream s;
          s << "X^2 - " << D << " Y^2 = " << A << " over Z_" << p << ": criterion " << want << ", search " << got;
          return s.str();
        });
      }
    }
  return rep;
}

inline StudyReport verify_tree(int max_g = 8) {
  StudyReport rep{"tree"};
  for (int g = 0; g <= max_g; ++g)
    for (int gp = 0; gp <= g; ++gp) {
      auto tag = [&](const char* what, int gpp, bool pb) {
        return [=] {
          std::ostringstream s;
          s << what << " g=" << g << " g'=" << gp << " g''=" << gpp << " pb=" << pb;
          return s.str();
        };
      };
      Int sum = 0;
      for (int gpp = 0; 2 * gpp <= g - gp; ++gpp) {
        const Int n = tree_count(g, gp, gpp, false);
        sum += n;
        rep.record(n == local_level_factor(g, gp, gpp, false), tag("level factor", gpp, false));
      }
      rep.record(sum == local_total_factor(g, gp, false), tag("total factor", 0, false));
      const Int nb = tree_count(g, gp, 0, true);
      rep.record(nb == local_level_factor(g, gp, 0, true), tag("level factor", 0, true));
      rep.record(nb == local_total_factor(g, gp, true), tag("total factor", 0, true));
    }
  return rep;
}

// Random contexts with r >= 1 primes of odd exponent and eps = -1.
struct GzContext {
  Int m = 1;
  std::map<Int, int> eps;
  int r = 0;
  std::map<Int, Int> predicted;
};

inline GzContext random_gz_context(std::mt19937_64& rng) {
  static const std::vector<Int> pool = primes_up_to(40);
  GzContext c;
  const int rs[] = {1, 1, 1, 2, 3, 4};
  c.r = rs[rng() % 6];
  std::vector<Int> primes = pool;
  std::shuffle(primes.begin(), primes.end(), rng);
  const int nq = static_cast<int>(rng() % 2), nw = static_cast<int>(rng() % 3);
  std::size_t k = 0;
  Int p1 = 0, e1 = 0, wprod = 1;
  auto mul_pow = [&](Int p, int e) {
    for (int i = 0; i < e; ++i) c.m = checked_mul(c.m, p);
  };
  for (int i = 0; i < c.r; ++i, ++k) {
    const int e = i == 0 ? 2 * static_cast<int>(rng() % 2) + 1 : 1;
    c.eps[primes[k]] = -1;
    mul_pow(primes[k], e);
    if (i == 0) p1 = primes[k], e1 = (e - 1) / 2;
  }
  for (int i = 0; i < nq; ++i, ++k) {
    c.eps[primes[k]] = -1;
    mul_pow(primes[k], 2);
  }
  for (int i = 0; i < nw; ++i, ++k) {
    const int g = 1 + static_cast<int>(rng() % 2);
    c.eps[primes[k]] = 1;
    mul_pow(primes[k], g);
    wprod *= g + 1;
  }
  for (const auto& [p, e] : c.eps) c.predicted[p] = 0;
  if (c.r == 1) c.predicted[p1] = (e1 + 1) * wprod;
  return c;
}

inline StudyReport verify_gz(std::uint64_t seed = 7, int contexts = 300) {
  StudyReport rep{"gz"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < contexts; ++i) {
    const GzContext c = random_gz_context(rng);
    const auto got = gz_F(c.m, EpsilonContext::synthetic(c.eps));
    rep.record(got == c.predicted, [&] {
      std::ostringstream s;
      s << "m=" << c.m << " r=" << c.r << ":";
      for (const auto& [p, v] : got) s << " v_" << p << "=" << v << "(want " << c.predicted.at(p) << ")";
      return s.str();
    });
  }
  return rep;
}

inline StudyReport verify_tables() {
  StudyReport rep{"tables"};
  const auto& eps = reference::epsilon_5_381();
  std::size_t k = 0;
  for (Int p : primes_up_to(100)) {
    const auto e = epsilon(p, 5, 381);
    const bool listed = k < eps.size() && eps[k].first == p;
    const bool ok = listed ? e == eps[k].second : !e.has_value();
    if (listed) ++k;
    rep.record(ok, [p] { return "epsilon(" + std::to_string(p) + ") for (5, 381)"; });
  }
  rep.record(algebra_classes(5, 381) == reference::algebras_5_381(), [] { return std::string("algebras for (5, 381)"); });
  for (const auto& col : reference::oriented_columns()) {
    const auto got = oriented_positive_by_level(col.d1, col.d2, col.x, col.disc, col.level);
    rep.record(got == col.by_ell, [&] {
      std::ostringstream s;
      s << "oriented positive counts (" << col.d1 << "," << col.d2 << "," << col.x << ") disc " << col.disc
        << " level " << col.level;
      return s.str();
    });
  }
  for (const auto& row : reference::embedding_classes()) {
    const Int got = count_embedding_classes(row.disc, row.level, make_positive_discriminant(row.D));
    rep.record(got == row.classes, [&] {
      std::ostringstream s;
      s << "embedding classes D=" << row.D << " disc " << row.disc << " level " << row.level << ": " << got;
      return s.str();
    });
  }
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hilbert", "pell", "tree", "gz", "tables"};
  return names;
}

inline StudyReport run_suite(const std::string& name) {
  if (name == "hilbert") return verify_hilbert();
  if (name == "pell") return verify_pell();
  if (name == "tree") return verify_tree();
  if (name == "gz") return verify_gz();
  if (name == "tables") return verify_tables();
  fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace linkcount
