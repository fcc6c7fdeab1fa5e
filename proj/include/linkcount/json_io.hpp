#pragma once

// JSON encoding for reports and lattices.  Integers that fit in 64 bits are
// numbers, larger ones are decimal strings, rationals are "num/den" strings.

#include <string>

#include "json.hpp"
#include "linkcount/intersection.hpp"
#include "linkcount/orders.hpp"

namespace linkcount {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "linkcount/1";

inline Json json_int(const BigInt& v) {
  if (fits_int64(v)) return to_int64(v);
  return to_string(v);
}

inline Json json_rational(const Rational& q) {
  if (den(q) == 1) return json_int(num(q));
  return to_string(q);
}

inline BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<Int>());
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    require(den(q) == 1, ErrorCode::ParseError, "expected an integer, got " + j.get<std::string>());
    return num(q);
  }
  fail(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  return Rational(big_from_json(j));
}

inline Int int_from_json(const Json& j, const char* key) {
  require(j.contains(key), ErrorCode::ParseError, std::string("missing key '") + key + "'");
  const BigInt v = big_from_json(j.at(key));
  require(fits_int64(v), ErrorCode::Overflow, std::string("'") + key + "' exceeds 64 bits");
  return to_int64(v);
}

inline Json to_json(const IntersectionReport& r) {
  Json j;
  j["d1"] = r.d1;
  j["d2"] = r.d2;
  j["disc"] = r.disc;
  j["level"] = r.level;
  Json rows = Json::array();
  for (const auto& e : r.per_x) {
    Json levels = Json::array();
    for (const auto& lc : e.levels) levels.push_back({{"ell", lc.ell}, {"count", lc.count}});
    rows.push_back({{"x", e.x}, {"m", e.m}, {"count", e.count}, {"levels", levels}});
  }
  j["per_x"] = rows;
  j["total_unsigned"] = r.total_unsigned;
  j["total_signed"] = r.total_signed;
  Json q = Json::array();
  for (const auto& [p, v] : r.q_weighted) q.push_back({{"q", p}, {"weighted", v}});
  j["q_weighted"] = q;
  return j;
}

inline IntersectionReport intersection_report_from_json(const Json& j) {
  try {
    IntersectionReport r;
    r.d1 = int_from_json(j, "d1");
    r.d2 = int_from_json(j, "d2");
    r.disc = int_from_json(j, "disc");
    r.level = int_from_json(j, "level");
    for (const auto& row : j.at("per_x")) {
      XEntry e{int_from_json(row, "x"), int_from_json(row, "m"), int_from_json(row, "count"), {}};
      for (const auto& lc : row.at("levels")) e.levels.push_back({int_from_json(lc, "ell"), int_from_json(lc, "count")});
      r.per_x.push_back(std::move(e));
    }
    r.total_unsigned = int_from_json(j, "total_unsigned");
    r.total_signed = int_from_json(j, "total_signed");
    for (const auto& q : j.at("q_weighted")) r.q_weighted[int_from_json(q, "q")] = int_from_json(q, "weighted");
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

inline Json to_json(const RationalLattice& L) {
  Json rows = Json::array();
  for (const auto& r : L.basis().rows) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(json_int(v));
    rows.push_back(row);
  }
  return {{"algebra", {{"a", json_rational(L.algebra().a())}, {"b", json_rational(L.algebra().b())}}},
          {"denominator", json_int(L.denominator())},
          {"rows", rows}};
}

// Rebuilds through the Hermite normal form, so any basis of the lattice parses.
inline RationalLattice lattice_from_json(const Json& j) {
  try {
    const QuatAlgebra alg(rational_from_json(j.at("algebra").at("a")), rational_from_json(j.at("algebra").at("b")));
    const BigInt d = big_from_json(j.at("denominator"));
    require(d > 0, ErrorCode::ParseError, "denominator must be positive");
    std::vector<QVec> gens;
    for (const auto& row : j.at("rows")) {
      require(row.size() == 4, ErrorCode::ParseError, "lattice rows need four entries");
      QVec v;
      for (std::size_t i = 0; i < 4; ++i) v[i] = make_rational(big_from_json(row[i]), d);
      gens.push_back(v);
    }
    return {alg, hermite_basis(gens)};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

}  // namespace linkcount
