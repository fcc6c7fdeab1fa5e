#pragma once

#include <numeric>
#include <optional>
#include <string>

#include "linkcount/quadclass.hpp"

namespace linkcount {

// (D1, D2, x) with positive discriminants.
struct Triple {
  Discriminant d1, d2;
  Int x = 0;
  Int product = 0;               // D1 D2
  std::optional<Int> m;          // (D1 D2 - x^2)/4 when admissible
  bool admissible = false;
  bool nice = false;

  bool x_inside() const { return checked_mul(x, x) < product; }
  std::string str() const {
    return "(" + std::to_string(d1.value) + ", " + std::to_string(d2.value) + ", " + std::to_string(x) + ")";
  }
};

inline Triple classify(const Discriminant& d1, const Discriminant& d2, Int x) {
  require(d1.value > 0 && d2.value > 0, ErrorCode::InvalidArgument, "discriminants must be positive");
  Triple t;
  t.d1 = d1;
  t.d2 = d2;
  t.x = x;
  t.product = checked_mul(d1.value, d2.value);
  const Int diff = checked_sub(t.product, checked_mul(x, x));
  t.admissible = mod_floor(x - t.product, 2) == 0 && diff != 0;
  if (t.admissible) {
    t.m = diff / 4;
    const Int g = std::gcd(std::gcd(d1.value, d2.value), checked_abs(diff));
    t.nice = g == 1;
  }
  return t;
}

inline Triple classify(Int d1, Int d2, Int x) {
  return classify(make_positive_discriminant(d1), make_positive_discriminant(d2), x);
}

inline Triple require_admissible(const Triple& t) {
  require(t.admissible, ErrorCode::InvalidTriple, "triple " + t.str() + " is not admissible");
  return t;
}

inline Triple require_nice(const Triple& t) {
  require_admissible(t);
  require(t.nice, ErrorCode::NotNice, "triple " + t.str() + " is not nice");
  return t;
}

}  // namespace linkcount
