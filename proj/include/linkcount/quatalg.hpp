#pragma once

// Quaternion algebras (a,b)_Q, their elements, Hilbert symbols and
// ramification.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "linkcount/arith.hpp"
#include "linkcount/numeric.hpp"

namespace linkcount {

// A place of Q: a prime p, or infinity (prime == 0).
struct Place {
  Int prime = 0;

  static Place infinity() { return {0}; }
  static Place finite(Int p) {
    require(p >= 2 && is_prime(p), ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    return {p};
  }
  bool is_infinite() const { return prime == 0; }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(prime); }

  bool operator==(const Place&) const = default;
  // finite places ascending, infinity last
  bool operator<(const Place& o) const {
    if (is_infinite() != o.is_infinite()) return !is_infinite();
    return prime < o.prime;
  }
};

namespace detail {

struct LocalParts {
  int valuation;
  Int unit_num;
  Int unit_den;
};

inline LocalParts split_at(const Rational& q, Int p) {
  Int n = to_int64(num(q));
  Int d = to_int64(den(q));
  int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  while (d % p == 0) { d /= p; --v; }
  return {v, n, d};
}

}  // namespace detail

// (a,b)_v in {+1,-1}.
inline int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  require(a != 0 && b != 0, ErrorCode::InvalidArgument, "Hilbert symbol of zero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  const Int p = v.prime;
  const auto A = detail::split_at(a, p);
  const auto B = detail::split_at(b, p);
  const int alpha = ((A.valuation % 2) + 2) % 2;
  const int beta = ((B.valuation % 2) + 2) % 2;
  if (p != 2) {
    int s = 1;
    if (alpha && beta && ((p - 1) / 2) % 2) s = -s;
    if (beta) s *= kronecker(A.unit_num, p) * kronecker(A.unit_den, p);
    if (alpha) s *= kronecker(B.unit_num, p) * kronecker(B.unit_den, p);
    return s;
  }
  const Int u = mod_floor(mod_floor(A.unit_num, 8) * mod_floor(A.unit_den, 8), 8);
  const Int w = mod_floor(mod_floor(B.unit_num, 8) * mod_floor(B.unit_den, 8), 8);
  auto eps = [](Int r) { return static_cast<int>(((r - 1) / 2) % 2); };
  auto omg = [](Int r) { return static_cast<int>(((r * r - 1) / 8) % 2); };
  const int e = eps(u) * eps(w) + alpha * omg(w) + beta * omg(u);
  return (e % 2) ? -1 : 1;
}

inline std::vector<Place> ramified_places(const Rational& a, const Rational& b) {
  require(a != 0 && b != 0, ErrorCode::InvalidArgument, "algebra parameters must be nonzero");
  std::set<Int> candidates{2};
  for (const BigInt& part : {num(a), den(a), num(b), den(b)}) {
    const Int v = to_int64(part);
    for (Int p : prime_divisors(v)) candidates.insert(p);
  }
  std::vector<Place> out;
  for (Int p : candidates)
    if (hilbert_symbol(a, b, Place{p}) == -1) out.push_back(Place{p});
  if (hilbert_symbol(a, b, Place::infinity()) == -1) out.push_back(Place::infinity());
  return out;
}

class QuatElement;

class QuatAlgebra {
 public:
  QuatAlgebra(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    ramified_ = ramified_places(a_, b_);
    if (ramified_.size() % 2) fail(ErrorCode::InternalError, "odd number of ramified places");
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const std::vector<Place>& ramified() const { return ramified_; }

  std::vector<Int> ramified_primes() const {
    std::vector<Int> out;
    for (const auto& v : ramified_)
      if (!v.is_infinite()) out.push_back(v.prime);
    return out;
  }

  Int discriminant() const {
    Int d = 1;
    for (Int p : ramified_primes()) d = checked_mul(d, p);
    return d;
  }

  bool is_indefinite() const {
    for (const auto& v : ramified_)
      if (v.is_infinite()) return false;
    return true;
  }

  bool same_as(const QuatAlgebra& o) const { return a_ == o.a_ && b_ == o.b_; }

  QuatElement element(Rational e, Rational f, Rational g, Rational h) const;

 private:
  Rational a_, b_;
  std::vector<Place> ramified_;
};

// e + f i + g j + h k with i^2 = a, j^2 = b, k = ij = -ji.
class QuatElement {
 public:
  QuatElement(Rational a, Rational b, std::array<Rational, 4> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  const std::array<Rational, 4>& coords() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  Rational trd() const { return 2 * c_[0]; }
  Rational nrd() const {
    return c_[0] * c_[0] - a_ * c_[1] * c_[1] - b_ * c_[2] * c_[2] + a_ * b_ * c_[3] * c_[3];
  }
  QuatElement conjugate() const { return {a_, b_, {c_[0], -c_[1], -c_[2], -c_[3]}}; }

  QuatElement operator+(const QuatElement& o) const {
    check(o);
    return {a_, b_, {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]}};
  }
  QuatElement operator-(const QuatElement& o) const {
    check(o);
    return {a_, b_, {c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]}};
  }
  QuatElement operator*(const QuatElement& o) const {
    check(o);
    const auto& [e1, f1, g1, h1] = c_;
    const auto& [e2, f2, g2, h2] = o.c_;
    const Rational& a = a_;
    const Rational& b = b_;
    return {a_, b_,
            {e1 * e2 + a * f1 * f2 + b * g1 * g2 - a * b * h1 * h2,
             e1 * f2 + f1 * e2 - b * g1 * h2 + b * h1 * g2,
             e1 * g2 + g1 * e2 + a * f1 * h2 - a * h1 * f2,
             e1 * h2 + h1 * e2 + f1 * g2 - g1 * f2}};
  }
  QuatElement operator*(const Rational& s) const { return {a_, b_, {c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s}}; }
  QuatElement operator+(const Rational& s) const { return {a_, b_, {c_[0] + s, c_[1], c_[2], c_[3]}}; }
  QuatElement operator-(const Rational& s) const { return {a_, b_, {c_[0] - s, c_[1], c_[2], c_[3]}}; }

  bool operator==(const QuatElement& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }

  bool belongs_to(const QuatAlgebra& alg) const { return alg.a() == a_ && alg.b() == b_; }

  std::string str() const {
    return "(" + to_string(c_[0]) + ", " + to_string(c_[1]) + ", " + to_string(c_[2]) + ", " + to_string(c_[3]) + ")";
  }

 private:
  void check(const QuatElement& o) const {
    if (a_ != o.a_ || b_ != o.b_) fail(ErrorCode::AlgebraMismatch, "elements of different algebras");
  }

  Rational a_, b_;
  std::array<Rational, 4> c_;
};

inline QuatElement QuatAlgebra::element(Rational e, Rational f, Rational g, Rational h) const {
  return {a_, b_, {std::move(e), std::move(f), std::move(g), std::move(h)}};
}

inline QuatElement multiply(const QuatElement& u, const QuatElement& v, const QuatAlgebra& alg) {
  require(u.belongs_to(alg) && v.belongs_to(alg), ErrorCode::AlgebraMismatch, "element not in algebra");
  return u * v;
}

}  // namespace linkcount
