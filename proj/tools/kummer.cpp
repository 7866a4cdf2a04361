// kummer: command-line front end. Settings come from defaults, then
// --config, then KUMMER_CACHE, then flags.

#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kummer/arith.hpp"
#include "kummer/cli/commands.hpp"
#include "kummer/cli/config.hpp"
#include "kummer/error.hpp"

using namespace kummer;
using namespace kummer::cli;

namespace {

// Flags shared by every subcommand; applied over the config file.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> cache;
  std::optional<std::string> format;
  std::optional<int> jobs;
  std::optional<long> prec_initial;
  std::optional<long> prec_max;
  std::optional<double> c;
  std::optional<std::string> x_multiples;
  std::optional<std::string> x_absolute;
  bool no_p_squared = false;
  std::optional<std::string> nus;
  std::optional<std::string> lemma22_steps;
  std::optional<std::string> lemma23_steps;
  bool force_beta = false;
  std::optional<long> eq2_sigma;
  std::optional<std::uint64_t> eq2_truncation;
  std::optional<std::uint64_t> hminus_cap;
  std::optional<std::uint64_t> oracle_ceiling;
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "key = value configuration file");
  app->add_option("--cache", o.cache, "cache file (overrides KUMMER_CACHE)");
  app->add_option("--format", o.format, "csv, jsonl or text");
  app->add_option("--jobs", o.jobs, "worker threads (0: OpenMP default)");
  app->add_option("--prec-initial", o.prec_initial, "initial working precision in bits");
  app->add_option("--prec-max", o.prec_max, "precision ceiling in bits");
}

void add_grid(CLI::App* app, Overrides& o) {
  app->add_option("--c", o.c, "constant c (>= 6.4355)");
  app->add_option("--x-multiples", o.x_multiples, "x = k p for these k, comma separated");
  app->add_option("--x-absolute", o.x_absolute, "absolute x cutoffs, comma separated");
  app->add_flag("--no-p-squared", o.no_p_squared, "drop x = p^2 from the grid");
  app->add_option("--nus", o.nus, "derivative orders, comma separated");
  app->add_option("--lemma22-steps", o.lemma22_steps, "sigma steps k for 1 + k/(c log p)");
  app->add_option("--lemma23-steps", o.lemma23_steps, "sigma steps k for 1 + k/(c log p)");
  app->add_flag("--force-beta", o.force_beta, "evaluate right sides as if a Siegel zero existed");
  app->add_option("--eq2-sigma", o.eq2_sigma, "integer sigma >= 2");
  app->add_option("--eq2-truncation", o.eq2_truncation, "truncation X");
  app->add_option("--hminus-cap", o.hminus_cap, "largest p for class number work");
}

RunConfig build_config(const Overrides& o) {
  RunConfig cfg;
  if (o.config) apply_config_file(cfg, *o.config);
  apply_environment(cfg);
  if (o.cache) cfg.cache_path = *o.cache;
  if (o.format) cfg.format = parse_format(*o.format);
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.prec_initial) cfg.precision.initial = *o.prec_initial;
  if (o.prec_max) cfg.precision.max = *o.prec_max;
  if (o.c) cfg.c = *o.c;
  if (o.x_multiples) apply_setting(cfg, "x_multiples", *o.x_multiples);
  if (o.x_absolute) apply_setting(cfg, "x_absolute", *o.x_absolute);
  if (o.no_p_squared) cfg.x_p_squared = false;
  if (o.nus) apply_setting(cfg, "nus", *o.nus);
  if (o.lemma22_steps) apply_setting(cfg, "lemma22_steps", *o.lemma22_steps);
  if (o.lemma23_steps) apply_setting(cfg, "lemma23_steps", *o.lemma23_steps);
  if (o.force_beta) cfg.force_beta = true;
  if (o.eq2_sigma) cfg.eq2_sigma = *o.eq2_sigma;
  if (o.eq2_truncation) cfg.eq2_truncation = *o.eq2_truncation;
  if (o.hminus_cap) cfg.hminus_cap = *o.hminus_cap;
  if (o.oracle_ceiling) cfg.oracle_ceiling = *o.oracle_ceiling;
  cfg.validate();
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  return cfg;
}

int parse_residue(const std::string& s) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  throw InvalidInput("--class must be +1 or -1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative class numbers of cyclotomic fields and explicit bound checks"};
  app.require_subcommand(1);
  Overrides o;

  std::uint64_t p = 0, from = 0, to = 0, x = 0;
  std::string method = "analytic", bound, residue, out_path;
  std::optional<long> prec;

  auto* hminus = app.add_subcommand("hminus", "exact h^- for one prime");
  hminus->add_option("--p", p, "odd prime")->required();
  hminus->add_option("--method", method, "analytic, maillet or both");
  hminus->add_option("--prec", prec, "initial precision for the analytic method");
  hminus->add_option("--oracle-ceiling", o.oracle_ceiling, "dual-method ceiling for scans");
  add_common(hminus, o);

  auto* scan = app.add_subcommand("scan", "h^- records for every prime in a range");
  scan->add_option("--from", from)->required();
  scan->add_option("--to", to)->required();
  scan->add_option("--out", out_path, "write rows here instead of stdout");
  scan->add_option("--oracle-ceiling", o.oracle_ceiling, "use both methods up to this prime");
  scan->add_option("--c", o.c, "constant c for the Siegel check");
  scan->add_option("--hminus-cap", o.hminus_cap, "largest p for class number work");
  add_common(scan, o);

  auto* verify = app.add_subcommand("verify", "check one bound over a range of primes");
  verify->add_option("--bound", bound, "lemma21|lemma22|lemma23|thm31|thm11|eq2|cor33")
      ->required();
  verify->add_option("--from", from)->required();
  verify->add_option("--to", to)->required();
  add_grid(verify, o);
  add_common(verify, o);

  auto* siegel = app.add_subcommand("siegel", "exceptional zero check for the quadratic character");
  auto* sp = siegel->add_option("--p", p, "one prime");
  auto* sf = siegel->add_option("--from", from);
  auto* st = siegel->add_option("--to", to);
  sp->excludes(sf)->excludes(st);
  sf->needs(st);
  st->needs(sf);
  siegel->add_option("--c", o.c, "constant c (>= 6.4355)");
  add_common(siegel, o);

  auto* pi = app.add_subcommand("pi", "weighted prime power count in a class mod p");
  pi->add_option("--p", p)->required();
  pi->add_option("--x", x)->required();
  pi->add_option("--class", residue, "+1 or -1")->required();
  add_common(pi, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = build_config(o);
    if (hminus->parsed())
      return cmd_hminus(cfg, p, classnumber::parse_method(method), prec, std::cout);
    if (scan->parsed()) {
      if (out_path.empty()) return cmd_scan(cfg, from, to, std::cout, std::cerr);
      std::ofstream out(out_path);
      if (!out) throw InvalidInput("cannot open " + out_path);
      return cmd_scan(cfg, from, to, out, std::cerr);
    }
    if (verify->parsed())
      return cmd_verify(cfg, bounds::parse_bound_id(bound), from, to, std::cout);
    if (siegel->parsed()) {
      if (sp->count() > 0) {
        if (p < 3 || !arith::is_prime(p))
          throw InvalidInput("not an odd prime: " + std::to_string(p));
        return cmd_siegel(cfg, p, p, std::cout);
      }
      if (sf->count() == 0) throw InvalidInput("give --p or --from/--to");
      return cmd_siegel(cfg, from, to, std::cout);
    }
    if (pi->parsed()) return cmd_pi(cfg, p, x, parse_residue(residue), std::cout);
  } catch (...) {
    auto e = std::current_exception();
    try {
      throw;
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << '\n';
    } catch (...) {
      std::cerr << "error: unknown exception\n";
    }
    return exit_code(e);
  }
  return 2;
}
