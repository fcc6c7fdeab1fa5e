#pragma once

// Subcommand implementations.  Each returns rendered text and an exit code;
// argument parsing lives in tools/linkcount.cpp.

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "linkcount/intersection.hpp"
#include "linkcount/json_io.hpp"
#include "linkcount/linking.hpp"
#include "linkcount/orders.hpp"
#include "linkcount/verify.hpp"

namespace linkcount::cli {

enum class Format { Table, Json, Tsv };

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "tsv") return Format::Tsv;
  fail(ErrorCode::InvalidArgument, "unknown format '" + s + "'");
}

struct Output {
  std::string text;
  int exit_code = 0;
};

inline constexpr const char* kUndefined = "·";
inline constexpr const char* kEmptySet = "∅";

inline std::string join(const std::vector<Int>& xs, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

inline std::string set_label(const std::vector<Int>& xs) { return xs.empty() ? kEmptySet : join(xs); }

// Left-aligned columns separated by two spaces; width counts code points.
inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  auto width = [](const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  };
  std::vector<std::size_t> w;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (w.size() <= i) w.push_back(0);
      w[i] = std::max(w[i], width(r[i]));
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(w[i] - width(r[i]) + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

inline std::string render_tsv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += '\t';
      out += r[i];
    }
    out += '\n';
  }
  return out;
}

inline Json envelope(const char* command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

inline std::string render(Format f, const std::vector<std::vector<std::string>>& rows, const Json& j) {
  switch (f) {
    case Format::Json:
      return j.dump(2) + "\n";
    case Format::Tsv:
      return render_tsv(rows);
    case Format::Table:
      break;
  }
  return render_table(rows);
}

inline Output render_error(Format f, const Error& e) {
  if (f == Format::Json) {
    Json j;
    j["schema"] = kSchema;
    j["error"] = std::string(error_code_name(e.code()));
    j["message"] = e.what();
    return {j.dump(2) + "\n", 1};
  }
  return {std::string("error: ") + e.what() + "\n", 1};
}

// ---- epsilon

inline Output cmd_epsilon(Int d1, Int d2, Int bound, Format f) {
  const Discriminant D1 = make_positive_discriminant(d1), D2 = make_positive_discriminant(d2);
  require(bound >= 0 && bound <= 10000000, ErrorCode::InvalidArgument, "bound must lie in [0, 10^7]");
  std::vector<std::vector<std::string>> rows{{"p", "eps"}};
  Json j = envelope("epsilon");
  j["d1"] = d1;
  j["d2"] = d2;
  j["bound"] = bound;
  Json vals = Json::array();
  for (Int p : primes_up_to(bound)) {
    const auto e = epsilon(p, D1, D2);
    rows.push_back({std::to_string(p), e ? std::to_string(*e) : kUndefined});
    vals.push_back({{"p", p}, {"eps", e ? Json(*e) : Json(nullptr)}});
  }
  j["values"] = vals;
  return {render(f, rows, j)};
}

// ---- algebras

inline Output cmd_algebras(Int d1, Int d2, Format f) {
  const auto classes = algebra_classes(d1, d2);
  std::vector<std::vector<std::string>> rows{{"ramified", "positive_x"}};
  Json j = envelope("algebras");
  j["d1"] = d1;
  j["d2"] = d2;
  Json arr = Json::array();
  for (const auto& [ram, xs] : classes) {
    rows.push_back({set_label(ram), join(xs)});
    arr.push_back({{"ramified", ram}, {"x", xs}});
  }
  j["classes"] = arr;
  return {render(f, rows, j)};
}

// ---- count

inline Json query_json(const CountQuery& q) {
  Json j;
  j["d1"] = q.d1;
  j["d2"] = q.d2;
  j["x"] = q.x;
  j["disc"] = q.disc;
  j["level"] = q.level;
  j["ell"] = q.ell ? Json(*q.ell) : Json(nullptr);
  j["oriented"] = q.oriented;
  j["positive"] = q.positive;
  return j;
}

inline Output cmd_count(const CountQuery& q, bool all_levels, Format f) {
  Json j = envelope("count");
  j["query"] = query_json(q);
  const std::vector<std::string> head{"d1", "d2", "x", "disc", "level", "ell", "oriented", "positive", "count"};
  auto row = [&](const std::string& ell, Int v) {
    return std::vector<std::string>{std::to_string(q.d1),    std::to_string(q.d2),    std::to_string(q.x),
                                    std::to_string(q.disc),  std::to_string(q.level), ell,
                                    q.oriented ? "1" : "0",  q.positive ? "1" : "0",  std::to_string(v)};
  };
  if (!all_levels) {
    const Int v = evaluate(q);
    j["count"] = v;
    if (f == Format::Table) return {std::to_string(v) + "\n"};
    return {render(f, {head, row(q.ell ? std::to_string(*q.ell) : "*", v)}, j)};
  }
  require(!q.ell, ErrorCode::InvalidArgument, "--all-levels and --ell are exclusive");
  const LinkingProfile prof = build_profile(q.d1, q.d2, q.x);
  std::vector<std::vector<std::string>> table{{"ell", "count"}}, tsv{head};
  Json levels = Json::array();
  for (Int ell : admissible_levels(prof, q.disc, q.level)) {
    CountQuery at = q;
    at.ell = ell;
    const Int v = evaluate(at);
    table.push_back({std::to_string(ell), std::to_string(v)});
    tsv.push_back(row(std::to_string(ell), v));
    levels.push_back({{"ell", ell}, {"count", v}});
  }
  j["levels"] = levels;
  return {render(f, f == Format::Tsv ? tsv : table, j)};
}

// ---- intersect

inline Output cmd_intersect(Int d1, Int d2, Int disc, Int level, const std::vector<Int>& qs, bool approx,
                            Format f) {
  const IntersectionReport rep = total_intersection(d1, d2, disc, level, qs);
  Json j = envelope("intersect");
  j["report"] = to_json(rep);
  std::vector<std::vector<std::string>> rows{{"x", "m", "count", "levels"}};
  if (approx) rows[0].push_back("angle");
  Json angles = Json::array();
  for (const auto& e : rep.per_x) {
    std::vector<std::string> lv;
    for (const auto& lc : e.levels) lv.push_back(std::to_string(lc.ell) + ":" + std::to_string(lc.count));
    std::string levels;
    for (std::size_t i = 0; i < lv.size(); ++i) levels += (i ? "," : "") + lv[i];
    rows.push_back({std::to_string(e.x), std::to_string(e.m), std::to_string(e.count), levels.empty() ? "-" : levels});
    if (approx) {
      std::ostringstream s;
      s << std::setprecision(12) << intersection_angle(d1, d2, e.x).radians();
      rows.back().push_back(s.str());
      angles.push_back({{"x", e.x}, {"radians", intersection_angle(d1, d2, e.x).radians()}});
    }
  }
  if (approx) j["angles"] = angles;
  if (f == Format::Table) {
    std::string out = render_table(rows);
    out += "total_unsigned  " + std::to_string(rep.total_unsigned) + "\n";
    out += "total_signed    " + std::to_string(rep.total_signed) + "\n";
    for (const auto& [q, v] : rep.q_weighted) out += "q_weighted " + std::to_string(q) + "    " + std::to_string(v) + "\n";
    return {out};
  }
  return {render(f, rows, j)};
}

// ---- order

inline Output cmd_order(Int d1, Int d2, Int x, std::optional<Int> ell, Format f) {
  const EmbeddingPair pair = standard_xlinked_pair(d1, d2, x);
  const RationalLattice L = ell ? generated_order_level(pair, *ell) : generated_order(pair);
  const Rational discrd = reduced_discriminant(L);
  Json j = envelope("order");
  j["d1"] = d1;
  j["d2"] = d2;
  j["x"] = x;
  j["ell"] = ell ? Json(*ell) : Json(nullptr);
  j["lattice"] = to_json(L);
  j["discrd"] = json_rational(discrd);
  j["determinant"] = json_rational(L.determinant());
  std::optional<Rational> wdet;
  if (ell) {
    wdet = level_lattice_w_basis(pair, *ell).determinant();
    j["w_basis_determinant"] = json_rational(*wdet);
  }
  std::vector<std::vector<std::string>> rows{{"key", "value"}};
  rows.push_back({"algebra", "(" + to_string(L.algebra().a()) + ", " + to_string(L.algebra().b()) + ")"});
  rows.push_back({"discrd", to_string(discrd)});
  rows.push_back({"determinant", to_string(L.determinant())});
  if (wdet) rows.push_back({"w_basis_determinant", to_string(*wdet)});
  for (std::size_t i = 0; i < 4; ++i) {
    const QVec r = L.basis().row(i);
    rows.push_back({"row" + std::to_string(i), to_string(r[0]) + " " + to_string(r[1]) + " " + to_string(r[2]) + " " +
                                                   to_string(r[3])});
  }
  return {render(f, rows, j)};
}

// ---- verify

inline Output cmd_verify(const std::vector<std::string>& suites, Format f) {
  std::vector<std::string> names = suites;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) names = suite_names();
  Json j = envelope("verify");
  Json arr = Json::array();
  std::vector<std::vector<std::string>> rows{{"status", "suite", "checked", "failed"}};
  std::string dump;
  int code = 0;
  for (const auto& n : names) {
    const StudyReport r = run_suite(n);
    if (!r.passed()) code = 1;
    rows.push_back({r.passed() ? "PASS" : "FAIL", r.name, std::to_string(r.checked), std::to_string(r.failed)});
    arr.push_back({{"suite", r.name},
                   {"passed", r.passed()},
                   {"checked", r.checked},
                   {"failed", r.failed},
                   {"counterexamples", r.counterexamples}});
    for (const auto& c : r.counterexamples) dump += "  " + r.name + ": " + c + "\n";
  }
  j["suites"] = arr;
  if (f == Format::Table) return {render_table(rows) + dump, code};
  return {render(f, rows, j), code};
}

// ---- batch

struct BatchRow {
  int line = 0;
  Int d1 = 0, d2 = 0;
  std::optional<Int> x;
};

struct BatchOptions {
  std::optional<Int> disc;
  std::optional<Int> level;
  std::optional<Int> ell;
  bool oriented = false;
  bool positive = false;
  std::vector<Int> qs;
  unsigned jobs = 1;
};

struct BatchResult {
  int line = 0;
  std::vector<std::string> fields;  // row text as read
  bool ok = false;
  std::string error;                // code name when !ok
  std::string message;
  Json data;
};

struct ParsedBatch {
  std::vector<BatchRow> rows;
  std::vector<BatchResult> rejected;  // malformed lines
};

inline std::optional<Int> parse_int(const std::string& s) {
  Int v = 0;
  std::size_t pos = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  return v;
}

inline ParsedBatch parse_batch(std::istream& in) {
  ParsedBatch out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto h = text.find('#'); h != std::string::npos) text.erase(h);
    std::istringstream ss(text);
    std::vector<std::string> f;
    for (std::string tok; ss >> tok;) f.push_back(tok);
    if (f.empty()) continue;
    auto reject = [&](const std::string& why) {
      out.rejected.push_back({line, f, false, std::string(error_code_name(ErrorCode::ParseError)), why, {}});
    };
    if (f.size() < 2 || f.size() > 3) {
      reject("expected 'D1 D2 [x]', got " + std::to_string(f.size()) + " fields");
      continue;
    }
    BatchRow r{line};
    std::vector<Int> v;
    for (const auto& tok : f) {
      const auto n = parse_int(tok);
      if (!n) break;
      v.push_back(*n);
    }
    if (v.size() != f.size()) {
      reject("non-integer field");
      continue;
    }
    r.d1 = v[0];
    r.d2 = v[1];
    if (v.size() == 3) r.x = v[2];
    out.rows.push_back(r);
  }
  return out;
}

inline Json run_batch_row(const BatchRow& r, const BatchOptions& opt) {
  Json j;
  const Int level = opt.level.value_or(1);
  if (!r.x) {
    const IntersectionReport rep = total_intersection(r.d1, r.d2, opt.disc.value_or(1), level, opt.qs);
    j["disc"] = rep.disc;
    j["level"] = rep.level;
    j["count"] = rep.total_unsigned;
    j["signed"] = rep.total_signed;
    return j;
  }
  const LinkingProfile prof = build_profile(r.d1, r.d2, *r.x);
  const Int disc = opt.disc.value_or(prof.candidate_disc());
  CountQuery q{r.d1, r.d2, *r.x, disc, level, opt.ell, opt.oriented, opt.positive};
  j["disc"] = disc;
  j["level"] = level;
  j["ramified"] = ramified_set(prof.triple);
  j["count"] = evaluate(q);
  j["levels"] = admissible_levels(prof, disc, level);
  return j;
}

inline std::vector<BatchResult> execute_batch(const ParsedBatch& parsed, const BatchOptions& opt) {
  std::vector<BatchResult> results(parsed.rows.size());
  std::vector<bool> valid(parsed.rows.size(), true);
  for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
    const auto& r = parsed.rows[i];
    results[i].line = r.line;
    results[i].fields = {std::to_string(r.d1), std::to_string(r.d2), r.x ? std::to_string(*r.x) : "-"};
    try {
      make_positive_discriminant(r.d1);
      make_positive_discriminant(r.d2);
    } catch (const Error& e) {
      valid[i] = false;
      results[i].error = std::string(error_code_name(e.code()));
      results[i].message = e.what();
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < parsed.rows.size();) {
      if (!valid[i]) continue;
      try {
        results[i].data = run_batch_row(parsed.rows[i], opt);
        results[i].ok = true;
      } catch (const Error& e) {
        results[i].error = std::string(error_code_name(e.code()));
        results[i].message = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(parsed.rows.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<BatchResult> all = parsed.rejected;
  all.insert(all.end(), results.begin(), results.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.line < b.line; });
  return all;
}

inline const char* kBatchColumns = "line d1 d2 x status disc level count detail";

inline Output cmd_batch(std::istream& in, const BatchOptions& opt, Format f) {
  const auto results = execute_batch(parse_batch(in), opt);
  std::vector<std::vector<std::string>> rows{{"line", "d1", "d2", "x", "status", "disc", "level", "count", "detail"}};
  Json j = envelope("batch");
  Json arr = Json::array();
  int errors = 0;
  for (const auto& r : results) {
    Json row;
    row["line"] = r.line;
    std::vector<std::string> cells{std::to_string(r.line)};
    for (std::size_t i = 0; i < 3; ++i) cells.push_back(i < r.fields.size() ? r.fields[i] : "-");
    if (r.ok) {
      row["ok"] = true;
      for (const auto& [k, v] : r.data.items()) row[k] = v;
      std::string detail = "-";
      if (r.data.contains("levels")) detail = "levels=" + join(r.data["levels"].get<std::vector<Int>>());
      if (r.data.contains("signed")) detail = "signed=" + r.data["signed"].dump();
      cells.insert(cells.end(), {"ok", r.data["disc"].dump(), r.data["level"].dump(), r.data["count"].dump(), detail});
    } else {
      ++errors;
      row["ok"] = false;
      row["error"] = r.error;
      row["message"] = r.message;
      cells.insert(cells.end(), {r.error, "-", "-", "-", r.message});
    }
    rows.push_back(cells);
    arr.push_back(row);
  }
  j["rows"] = arr;
  j["errors"] = errors;
  return {render(f, rows, j), errors ? 1 : 0};
}

}  // namespace linkcount::cli
