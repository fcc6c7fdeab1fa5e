// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "linkcount/cli.hpp"

using namespace linkcount;

namespace {

// Limits in seconds.
constexpr double kLimitTable1 = 0.1;
constexpr double kLimitTable2 = 1.0;
constexpr double kLimitTable4 = 0.1;
constexpr double kLimitTable9 = 0.1;
constexpr double kLimitLevelOrder = 30.0;
constexpr double kLimitHilbert = 60.0;
constexpr double kLimitPell = 60.0;
constexpr double kLimitTree = 5.0;

constexpr int kLevelOrderTriples = 200;
constexpr Int kLevelOrderMaxProduct = 1000000;
constexpr int kHilbertPairs = 1000;
constexpr int kStratificationQueries = 500;
constexpr int kGzContexts = 300;

struct Verdict {
  bool ok = true;
  std::string note;
};

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(LINKCOUNT_BIN) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

Json run_json(const std::string& args) {
  try {
    return Json::parse(run_cli("--format json " + args));
  } catch (const std::exception&) {
    return Json();
  }
}

int failures = 0;

void criterion(int id, const char* name, double limit, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && secs > limit) {
    v.ok = false;
    v.note += (v.note.empty() ? "" : "; ") + std::string("over time limit");
  }
  if (!v.ok) ++failures;
  std::printf("[%s] %2d %-46s (%.3f s)%s%s\n", v.ok ? "PASS" : "FAIL", id, name, secs, v.note.empty() ? "" : "  ",
              v.note.c_str());
  std::fflush(stdout);
}

Verdict from_report(const StudyReport& r) {
  std::ostringstream s;
  s << r.checked << " checks";
  if (!r.passed()) s << ", " << r.failed << " failed, first: " << r.counterexamples.front();
  return {r.passed(), s.str()};
}

std::map<Int, Int> levels_from_json(const Json& j) {
  std::map<Int, Int> out;
  for (const auto& e : j.at("levels")) out[e.at("ell").get<Int>()] = e.at("count").get<Int>();
  return out;
}

Verdict oriented_column(const reference::OrientedColumn& col) {
  std::ostringstream args;
  args << "count --d1 " << col.d1 << " --d2 " << col.d2 << " --x " << col.x << " --disc " << col.disc << " --level "
       << col.level << " --oriented --positive --all-levels";
  const auto got = levels_from_json(run_json(args.str()));
  return {got == col.by_ell, got == col.by_ell ? "" : "mismatch"};
}

// Random positive non-square discriminant at most `hi`.
Int random_discriminant(std::mt19937_64& rng, Int hi) {
  std::uniform_int_distribution<Int> pick(5, hi);
  for (;;) {
    const Int d = pick(rng);
    if ((d % 4 == 0 || d % 4 == 1) && !is_square(d)) return d;
  }
}

// Random nice triple with D1 D2 <= max_product; x may lie on either side of sqrt(D1 D2).
Triple random_nice_triple(std::mt19937_64& rng, Int max_product, bool inside) {
  for (;;) {
    const Int d1 = random_discriminant(rng, 1000);
    const Int d2 = random_discriminant(rng, std::max<Int>(5, max_product / d1));
    if (d1 * d2 > max_product) continue;
    const Int s = isqrt(d1 * d2);
    const Int span = inside ? s : s + 50;
    const Int x = std::uniform_int_distribution<Int>(-span, span)(rng);
    const Triple t = classify(d1, d2, x);
    if (t.nice && (!inside || t.x_inside())) return t;
  }
}

}  // namespace

int main() {
  criterion(1, "epsilon for (5, 381)", kLimitTable1, [] {
    const Json j = run_json("epsilon --d1 5 --d2 381 --bound 100");
    const auto& ref = reference::epsilon_5_381();
    std::vector<std::pair<Int, int>> defined;
    int undefined = 0;
    for (const auto& e : j.at("values")) {
      if (e.at("eps").is_null())
        ++undefined;
      else
        defined.emplace_back(e.at("p").get<Int>(), e.at("eps").get<int>());
    }
    const bool ok = defined == ref && undefined + ref.size() == primes_up_to(100).size();
    return Verdict{ok, std::to_string(defined.size()) + " values"};
  });

  criterion(2, "algebras for (5, 381)", kLimitTable2, [] {
    const Json j = run_json("algebras --d1 5 --d2 381");
    std::map<std::vector<Int>, std::vector<Int>> got;
    for (const auto& c : j.at("classes")) got[c.at("ramified").get<std::vector<Int>>()] = c.at("x").get<std::vector<Int>>();
    return Verdict{got == reference::algebras_5_381(), std::to_string(got.size()) + " classes"};
  });

  criterion(3, "oriented counts (73, 937, 89) at disc 35", kLimitTable4, [] {
    const auto& cols = reference::oriented_columns();
    const Verdict a = oriented_column(cols[0]), b = oriented_column(cols[1]);
    return Verdict{a.ok && b.ok, std::string("maximal ") + (a.ok ? "ok" : "bad") + ", level 3 " + (b.ok ? "ok" : "bad")};
  });

  criterion(4, "oriented counts (241, 2736, 324) at disc 77", kLimitTable9, [] {
    const Verdict v = oriented_column(reference::oriented_columns()[2]);
    const bool pb = potentially_bad_primes(make_discriminant(241), make_discriminant(2736)) == std::vector<Int>{2, 3};
    return Verdict{v.ok && pb, pb ? v.note : "potentially bad primes differ"};
  });

  criterion(5, "embedding class counts", 0, [] {
    for (const auto& row : reference::embedding_classes())
      if (count_embedding_classes(row.disc, row.level, make_positive_discriminant(row.D)) != row.classes)
        return Verdict{false, "D=" + std::to_string(row.D) + " disc " + std::to_string(row.disc)};
    return Verdict{true, std::to_string(reference::embedding_classes().size()) + " rows"};
  });

  criterion(6, "level-order determinant and discrd", kLimitLevelOrder, [] {
    std::mt19937_64 rng(2024);
    int lattices = 0;
    for (int i = 0; i < kLevelOrderTriples; ++i) {
      const Triple t = random_nice_triple(rng, kLevelOrderMaxProduct, false);
      const Int m = checked_abs(*t.m);
      const EmbeddingPair pair = standard_xlinked_pair(t);
      for (Int ell = 1; ell * ell <= m; ++ell) {
        if (m % (ell * ell)) continue;
        const RationalLattice L = lattice_from_elements(pair.algebra, level_generators(pair, ell));
        const Rational det = level_lattice_w_basis(pair, ell).determinant();
        if (det != Rational(1, 16 * ell) || reduced_discriminant(L) != Rational(m / (ell * ell)))
          return Verdict{false, t.str() + " ell=" + std::to_string(ell)};
        ++lattices;
      }
    }
    return Verdict{true, std::to_string(kLevelOrderTriples) + " triples, " + std::to_string(lattices) + " lattices"};
  });

  criterion(7, "Hilbert product formula and grid", kLimitHilbert,
            [] { return from_report(verify_hilbert(11, kHilbertPairs, 30)); });

  criterion(8, "Pell criterion vs search", kLimitPell, [] { return from_report(verify_pell()); });

  criterion(9, "tree model vs local factors", kLimitTree, [] { return from_report(verify_tree(8)); });

  criterion(10, "stratification and eps-sum identity", 0, [] {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < kStratificationQueries) {
      const Triple t = random_nice_triple(rng, 200000, true);
      LinkingProfile prof;
      try {
        prof = build_profile(t);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::UndefinedEpsilon) continue;
        throw;
      }
      const Int disc = prof.candidate_disc();
      const Int level = std::array<Int, 4>{1, 1, 3, 5}[rng() % 4];
      if (std::gcd(level, disc) != 1) continue;
      const Int m = *t.m;
      Int sum = 0;
      for (Int ell = 1; ell * ell <= m; ++ell)
        if (m % (ell * ell) == 0) sum += count_linked_level(prof, disc, level, ell);
      if (sum != count_linked(prof, disc, level)) return Verdict{false, "level sum at " + t.str()};
      const EpsilonContext ctx = EpsilonContext::from_discriminants(t.d1, t.d2);
      Int eps_sum = 0;
      for (Int d : divisors(m / disc)) eps_sum += ctx.of(d);
      Int prod = 1;
      for (const auto& w : prof.w_list) prod *= w.valuation + 1;
      if (eps_sum != prod) return Verdict{false, "eps sum at " + t.str()};
      ++done;
    }
    return Verdict{true, std::to_string(done) + " queries"};
  });

  criterion(11, "valuation law on r >= 1 contexts", 0, [] { return from_report(verify_gz(13, kGzContexts)); });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
