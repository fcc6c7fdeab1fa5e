#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "linkcount/cli.hpp"

using namespace linkcount;
using namespace linkcount::cli;

namespace {

unsigned default_jobs() {
  if (const char* env = std::getenv("LINKCOUNT_JOBS")) {
    const auto n = parse_int(env);
    if (n && *n >= 1) return static_cast<unsigned>(*n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts of x-linked optimal embeddings into Eichler orders"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "tsv"}));

  Int d1 = 0, d2 = 0, x = 0, bound = 100, disc = 1, level = 1, ell = 0;
  bool oriented = false, positive = false, all_levels = false, approx = false;
  std::vector<Int> qs;
  std::vector<std::string> suites;
  std::string input = "-";
  unsigned jobs = default_jobs();

  auto pair_opts = [&](CLI::App* c) {
    c->add_option("--d1", d1, "First discriminant")->required();
    c->add_option("--d2", d2, "Second discriminant")->required();
  };

  auto* eps = app.add_subcommand("epsilon", "Values of epsilon(p) for primes p <= bound");
  pair_opts(eps);
  eps->add_option("--bound", bound, "Prime bound")->capture_default_str();

  auto* alg = app.add_subcommand("algebras", "Ramified sets of the algebras for x > 0");
  pair_opts(alg);

  auto* cnt = app.add_subcommand("count", "Number of x-linked pairs");
  pair_opts(cnt);
  cnt->add_option("--x", x, "Linking number")->required();
  cnt->add_option("--disc", disc, "Algebra discriminant")->capture_default_str();
  cnt->add_option("--level", level, "Eichler level")->capture_default_str();
  auto* ell_opt = cnt->add_option("--ell", ell, "Intersection level");
  cnt->add_flag("--oriented", oriented, "Fix orientations");
  cnt->add_flag("--positive", positive, "Positive sign only");
  cnt->add_flag("--all-levels", all_levels, "One row per admissible intersection level");
  cnt->footer("TSV columns: d1 d2 x disc level ell oriented positive count");

  auto* itx = app.add_subcommand("intersect", "Total intersection summed over x");
  pair_opts(itx);
  itx->add_option("--disc", disc, "Algebra discriminant")->capture_default_str();
  itx->add_option("--level", level, "Eichler level")->capture_default_str();
  itx->add_option("--q", qs, "Extra primes for the weighted totals");
  itx->add_flag("--approx", approx, "Add floating-point intersection angles");
  itx->footer("TSV columns: x m count levels [angle]");

  auto* ord = app.add_subcommand("order", "Order generated by the standard x-linked pair");
  pair_opts(ord);
  ord->add_option("--x", x, "Linking number")->required();
  auto* ord_ell = ord->add_option("--ell", ell, "Level of the intersection order");
  ord->footer("TSV columns: key value");

  auto* ver = app.add_subcommand("verify", "Run self-check suites");
  ver->add_option("suites", suites, "hilbert pell tree gz tables (default all)");
  ver->footer("TSV columns: status suite checked failed");

  auto* bat = app.add_subcommand("batch", "Process 'D1 D2 [x]' records, one per line");
  bat->add_option("input", input, "Input file, - for stdin")->capture_default_str();
  auto* bat_disc = bat->add_option("--disc", disc, "Algebra discriminant override");
  auto* bat_level = bat->add_option("--level", level, "Eichler level override");
  auto* bat_ell = bat->add_option("--ell", ell, "Intersection level");
  bat->add_flag("--oriented", oriented, "Fix orientations");
  bat->add_flag("--positive", positive, "Positive sign only");
  bat->add_option("--q", qs, "Extra primes for the weighted totals");
  bat->add_option("--jobs", jobs, "Worker threads (default LINKCOUNT_JOBS or core count)");
  bat->footer(std::string("TSV columns: ") + kBatchColumns);

  CLI11_PARSE(app, argc, argv);

  const Format f = parse_format(format);
  Output out;
  try {
    if (eps->parsed()) {
      out = cmd_epsilon(d1, d2, bound, f);
    } else if (alg->parsed()) {
      out = cmd_algebras(d1, d2, f);
    } else if (cnt->parsed()) {
      CountQuery q{d1, d2, x, disc, level, std::nullopt, oriented, positive};
      if (*ell_opt) q.ell = ell;
      out = cmd_count(q, all_levels, f);
    } else if (itx->parsed()) {
      out = cmd_intersect(d1, d2, disc, level, qs, approx, f);
    } else if (ord->parsed()) {
      out = cmd_order(d1, d2, x, *ord_ell ? std::optional<Int>(ell) : std::nullopt, f);
    } else if (ver->parsed()) {
      out = cmd_verify(suites, f);
    } else if (bat->parsed()) {
      BatchOptions opt;
      if (*bat_disc) opt.disc = disc;
      if (*bat_level) opt.level = level;
      if (*bat_ell) opt.ell = ell;
      opt.oriented = oriented;
      opt.positive = positive;
      opt.qs = qs;
      opt.jobs = jobs;
      if (input == "-") {
        out = cmd_batch(std::cin, opt, f);
      } else {
        std::ifstream file(input);
        if (!file) fail(ErrorCode::InvalidArgument, "cannot open " + input);
        out = cmd_batch(file, opt, f);
      }
    }
  } catch (const Error& e) {
    out = render_error(f, e);
    (f == Format::Json ? std::cout : std::cerr) << out.text;
    return out.exit_code;
  }
  std::cout << out.text;
  return out.exit_code;
}
