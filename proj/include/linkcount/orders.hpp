#pragma once

// Full-rank lattices in quaternion algebras, Hermite normal forms and the
// orders generated by x-linked pairs of embeddings.

#include <array>
#include <string>
#include <vector>

#include "linkcount/numeric.hpp"
#include "linkcount/quatalg.hpp"
#include "linkcount/triple.hpp"

namespace linkcount {

using QVec = std::array<Rational, 4>;
using IVec = std::array<BigInt, 4>;

// Upper-triangular row HNF with positive pivots and entries above each pivot
// reduced into [0, pivot).
inline std::array<IVec, 4> integer_hnf(std::vector<IVec> m) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < 4; ++col) {
    for (;;) {
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        if (best == m.size() || abs(m[i][col]) < abs(m[best][col])) best = i;
      }
      if (best == m.size()) fail(ErrorCode::RankDeficient, "generators do not span a rank-4 lattice");
      std::swap(m[r], m[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][col] == 0) continue;
        const BigInt q = m[i][col] / m[r][col];
        for (std::size_t k = col; k < 4; ++k) m[i][k] -= q * m[r][k];
        if (m[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][col] < 0)
      for (auto& v : m[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      const BigInt q = floor_div(m[i][col], m[r][col]);
      if (q != 0)
        for (std::size_t k = col; k < 4; ++k) m[i][k] -= q * m[r][k];
    }
    ++r;
  }
  return {m[0], m[1], m[2], m[3]};
}

// Canonical basis of a rational lattice: rows / denominator, with the
// denominator minimal.
struct HermiteBasis {
  BigInt denominator = 1;
  std::array<IVec, 4> rows{};

  Rational determinant() const {
    BigInt prod = 1;
    for (std::size_t i = 0; i < 4; ++i) prod *= rows[i][i];
    const BigInt d = denominator;
    return Rational(prod, d * d * d * d);
  }

  QVec row(std::size_t i) const {
    QVec v;
    for (std::size_t k = 0; k < 4; ++k) v[k] = Rational(rows[i][k], denominator);
    return v;
  }

  bool operator==(const HermiteBasis&) const = default;
};

inline HermiteBasis hermite_basis(const std::vector<QVec>& gens) {
  require(gens.size() >= 4, ErrorCode::RankDeficient, "fewer than four generators");
  BigInt d = 1;
  for (const auto& g : gens)
    for (const auto& c : g) d = boost::multiprecision::lcm(d, den(c));
  std::vector<IVec> ints;
  ints.reserve(gens.size());
  for (const auto& g : gens) {
    IVec v;
    for (std::size_t k = 0; k < 4; ++k) v[k] = num(g[k] * d);
    ints.push_back(v);
  }
  HermiteBasis h;
  h.rows = integer_hnf(std::move(ints));
  BigInt g = d;
  for (const auto& row : h.rows)
    for (const auto& v : row) g = big_gcd(g, v);
  h.denominator = d / g;
  for (auto& row : h.rows)
    for (auto& v : row) v /= g;
  return h;
}

// Coefficients c with c . (rows/denominator) = v, if integral.
inline std::optional<std::array<BigInt, 4>> integral_coordinates(const HermiteBasis& h, const QVec& v) {
  std::array<BigInt, 4> c;
  for (std::size_t col = 0; col < 4; ++col) {
    Rational acc = v[col] * h.denominator;
    for (std::size_t i = 0; i < col; ++i) acc -= Rational(c[i] * h.rows[i][col]);
    const Rational q = acc / Rational(h.rows[col][col]);
    if (den(q) != 1) return std::nullopt;
    c[col] = num(q);
  }
  return c;
}

inline bool contains(const HermiteBasis& outer, const HermiteBasis& inner) {
  for (std::size_t i = 0; i < 4; ++i)
    if (!integral_coordinates(outer, inner.row(i))) return false;
  return true;
}

inline Rational determinant(std::array<QVec, 4> m) {
  Rational det = 1;
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    while (piv < 4 && m[piv][col] == 0) ++piv;
    if (piv == 4) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t i = col + 1; i < 4; ++i) {
      if (m[i][col] == 0) continue;
      const Rational f = m[i][col] / m[col][col];
      for (std::size_t k = col; k < 4; ++k) m[i][k] -= f * m[col][k];
    }
  }
  return det;
}

inline std::array<QVec, 4> inverse(std::array<QVec, 4> m) {
  std::array<QVec, 4> inv{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) inv[i][k] = (i == k) ? 1 : 0;
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    while (piv < 4 && m[piv][col] == 0) ++piv;
    if (piv == 4) fail(ErrorCode::RankDeficient, "singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t k = 0; k < 4; ++k) {
      m[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t k = 0; k < 4; ++k) {
        m[i][k] -= f * m[col][k];
        inv[i][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

class RationalLattice {
 public:
  RationalLattice(QuatAlgebra alg, HermiteBasis basis) : alg_(std::move(alg)), basis_(std::move(basis)) {}

  const QuatAlgebra& algebra() const { return alg_; }
  const HermiteBasis& basis() const { return basis_; }
  const BigInt& denominator() const { return basis_.denominator; }
  Rational determinant() const { return basis_.determinant(); }

  QuatElement basis_element(std::size_t i) const {
    const QVec r = basis_.row(i);
    return alg_.element(r[0], r[1], r[2], r[3]);
  }

  bool contains(const QuatElement& e) const {
    require(e.belongs_to(alg_), ErrorCode::AlgebraMismatch, "element of another algebra");
    return integral_coordinates(basis_, e.coords()).has_value();
  }

  bool operator==(const RationalLattice& o) const { return alg_.same_as(o.alg_) && basis_ == o.basis_; }

 private:
  QuatAlgebra alg_;
  HermiteBasis basis_;
};

inline RationalLattice lattice_from_elements(const QuatAlgebra& alg, const std::vector<QuatElement>& gens) {
  std::vector<QVec> rows;
  for (const auto& g : gens) {
    require(g.belongs_to(alg), ErrorCode::AlgebraMismatch, "generator of another algebra");
    rows.push_back(g.coords());
  }
  return {alg, hermite_basis(rows)};
}

inline bool contains(const RationalLattice& outer, const RationalLattice& inner) {
  require(outer.algebra().same_as(inner.algebra()), ErrorCode::AlgebraMismatch, "lattices in different algebras");
  return contains(outer.basis(), inner.basis());
}

// sqrt(-det(trd(a_i a_j))).
inline Rational reduced_discriminant(const RationalLattice& L) {
  std::array<QuatElement, 4> e{L.basis_element(0), L.basis_element(1), L.basis_element(2), L.basis_element(3)};
  std::array<QVec, 4> gram;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) gram[i][j] = (e[i] * e[j]).trd();
  const Rational neg = -determinant(gram);
  require(neg > 0 && is_big_square(num(neg)) && is_big_square(den(neg)), ErrorCode::NotASquare,
          "-det of the trace form is not a rational square: " + to_string(neg));
  return Rational(big_isqrt(num(neg)), big_isqrt(den(neg)));
}

inline bool is_order(const RationalLattice& L) {
  bool has_one = L.contains(L.algebra().element(1, 0, 0, 0));
  if (!has_one) return false;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!L.contains(L.basis_element(i) * L.basis_element(j))) return false;
  return true;
}

// phi1(sqrt D1) = i, phi2(sqrt D2) = (x i + k)/D1 in (D1, x^2 - D1 D2).
struct EmbeddingPair {
  Triple triple;
  QuatAlgebra algebra;
  QuatElement w1, w2, v1, v2;
};

inline EmbeddingPair standard_xlinked_pair(const Triple& t) {
  require_admissible(t);
  const Int D1 = t.d1.value;
  QuatAlgebra alg(Rational(D1), Rational(checked_sub(checked_mul(t.x, t.x), t.product)));
  QuatElement w1 = alg.element(0, 1, 0, 0);
  QuatElement w2 = alg.element(0, Rational(t.x, D1), 0, Rational(1, D1));
  QuatElement v1 = (w1 + Rational(t.d1.parity)) * Rational(1, 2);
  QuatElement v2 = (w2 + Rational(t.d2.parity)) * Rational(1, 2);
  return {t, alg, w1, w2, v1, v2};
}

inline EmbeddingPair standard_xlinked_pair(Int d1, Int d2, Int x) { return standard_xlinked_pair(classify(d1, d2, x)); }

inline void check_denominator(const RationalLattice& L, const BigInt& bound, const char* what) {
  if (bound % L.denominator() != 0)
    fail(ErrorCode::InternalError, std::string(what) + ": denominator " + L.denominator().str() + " exceeds bound");
}

// Z<1, v1, v2, v1 v2>, reduced discriminant |m|.
inline RationalLattice generated_order(const EmbeddingPair& pair) {
  const auto& alg = pair.algebra;
  RationalLattice L = lattice_from_elements(alg, {alg.element(1, 0, 0, 0), pair.v1, pair.v2, pair.v1 * pair.v2});
  check_denominator(L, BigInt(8) * pair.triple.d1.value, "generated_order");
  const Int m = checked_abs(*pair.triple.m);
  if (reduced_discriminant(L) != Rational(m)) fail(ErrorCode::InternalError, "generated order has wrong discriminant");
  return L;
}

inline void check_level(const EmbeddingPair& pair, Int ell) {
  require_nice(pair.triple);
  require(ell >= 1, ErrorCode::LevelNotAllowed, "level must be positive");
  const Int m = checked_abs(*pair.triple.m);
  require(m % checked_mul(ell, ell) == 0, ErrorCode::LevelNotAllowed,
          "ell^2 = " + std::to_string(ell * ell) + " does not divide m = " + std::to_string(*pair.triple.m));
}

// w3 = (w1 w2 - x)/ell.
inline QuatElement level_w3(const EmbeddingPair& pair, Int ell) {
  return (pair.w1 * pair.w2 - Rational(pair.triple.x)) * Rational(1, ell);
}

// The eight words 1, v1, v2, v3, v1v2, v1v3, v2v3, v1v2v3 with v3 = w3/2.
inline std::vector<QuatElement> level_generators(const EmbeddingPair& pair, Int ell) {
  check_level(pair, ell);
  const auto& alg = pair.algebra;
  const QuatElement v3 = level_w3(pair, ell) * Rational(1, 2);
  const auto& v1 = pair.v1;
  const auto& v2 = pair.v2;
  return {alg.element(1, 0, 0, 0), v1, v2, v3, v1 * v2, v1 * v3, v2 * v3, v1 * v2 * v3};
}

inline RationalLattice generated_order_level(const EmbeddingPair& pair, Int ell) {
  RationalLattice L = lattice_from_elements(pair.algebra, level_generators(pair, ell));
  check_denominator(L, BigInt(8) * ell * pair.triple.d1.value, "generated_order_level");
  const Int m = checked_abs(*pair.triple.m);
  if (reduced_discriminant(L) != Rational(m / (ell * ell)))
    fail(ErrorCode::InternalError, "level order has wrong discriminant");
  return L;
}

// Generators of the level order written over the basis (1, w1, w2, w3).
inline std::vector<QVec> level_generators_w_coordinates(const EmbeddingPair& pair, Int ell) {
  const auto gens = level_generators(pair, ell);
  const QuatElement w3 = level_w3(pair, ell);
  std::array<QVec, 4> w{pair.algebra.element(1, 0, 0, 0).coords(), pair.w1.coords(), pair.w2.coords(), w3.coords()};
  const auto winv = inverse(w);
  std::vector<QVec> out;
  for (const auto& g : gens) {
    QVec c{};
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < 4; ++i) c[k] += g[i] * winv[i][k];
    out.push_back(c);
  }
  return out;
}

// Covolume of the level order relative to Z<1, w1, w2, w3>; equals 1/(16 ell).
inline HermiteBasis level_lattice_w_basis(const EmbeddingPair& pair, Int ell) {
  return hermite_basis(level_generators_w_coordinates(pair, ell));
}

}  // namespace linkcount
