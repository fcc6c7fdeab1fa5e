#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "linkcount/arith.hpp"

namespace linkcount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(const BigInt& n, const BigInt& d) {
  require(d != 0, ErrorCode::InvalidArgument, "zero denominator");
  return Rational(n, d);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return make_rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "not a rational number: " + s);
  }
}

inline bool fits_int64(const BigInt& v) {
  return v >= BigInt(INT64_MIN) && v <= BigInt(INT64_MAX);
}

inline Int to_int64(const BigInt& v) {
  require(fits_int64(v), ErrorCode::Overflow, "value does not fit in int64: " + v.str());
  return static_cast<Int>(v);
}

inline BigInt big_isqrt(const BigInt& v) {
  require(v >= 0, ErrorCode::InvalidArgument, "isqrt of negative number");
  return boost::multiprecision::sqrt(v);
}

inline bool is_big_square(const BigInt& v) {
  if (v < 0) return false;
  BigInt r = big_isqrt(v);
  return r * r == v;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  return boost::multiprecision::gcd(a, b);
}

}  // namespace linkcount
