#include "kummer/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "kummer/arith.hpp"
#include "kummer/cli/cache.hpp"
#include "kummer/error.hpp"
#include "kummer/exec.hpp"
#include "kummer/lfunc.hpp"

namespace kummer::cli {

namespace {

constexpr int kScanChunk = 32;

std::string fmt_mid(const BallReal& b, int digits = 17) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, b.mid());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string fmt_rad(const BallReal& b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", b.rad_double());
  return buf;
}

std::string fmt_ball(const BallReal& b, int digits = 17) {
  return fmt_mid(b, digits) + " +/- " + fmt_rad(b);
}

std::string fmt_double(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", d);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

// --- scan rows ---------------------------------------------------------------

// Rows are rendered from the cached payload, never from live objects, so a
// resumed scan prints exactly what a fresh one does.
void write_scan_row(const json& payload, OutputFormat fmt, std::ostream& out) {
  const BallReal log_G = ball_from_json(payload.at("log_G"));
  const BallReal log_ratio = ball_from_json(payload.at("log_ratio"));
  const json& beta = payload.at("siegel").at("beta");
  const std::string beta_s = beta.is_null() ? "" : fmt_mid(ball_from_json(beta));
  const std::string p = std::to_string(payload.at("p").get<std::uint64_t>());
  const std::string h = payload.at("h_minus").get<std::string>();
  const std::string bits = std::to_string(payload.at("precision_bits").get<long>());
  const std::string method = payload.at("method").get<std::string>();
  const bool certified = payload.at("certified").get<bool>();

  switch (fmt) {
    case OutputFormat::csv:
      out << p << ',' << h << ',' << fmt_mid(log_G) << ',' << fmt_mid(log_ratio) << ','
          << beta_s << ',' << bits << ',' << method << ',' << yes_no(certified) << '\n';
      break;
    case OutputFormat::jsonl: {
      json row{{"p", payload.at("p")},
               {"h_minus", h},
               {"log_G", payload.at("log_G")},
               {"log_ratio", payload.at("log_ratio")},
               {"siegel_beta", beta},
               {"precision_bits", payload.at("precision_bits")},
               {"method", method},
               {"certified", certified}};
      out << row.dump() << '\n';
      break;
    }
    case OutputFormat::text:
      out << "p=" << p << " h_minus=" << h << " log_G=" << fmt_mid(log_G)
          << " log_ratio=" << fmt_mid(log_ratio) << " siegel_beta=" << beta_s
          << " precision_bits=" << bits << " method=" << method
          << " certified=" << yes_no(certified) << '\n';
      break;
  }
}

// --- verify rows -------------------------------------------------------------

std::string status_of(const bounds::BoundReport& r) {
  if (r.skipped) return "SKIP";
  return r.pass ? "PASS" : "FAIL";
}

void write_report(const bounds::BoundReport& r, OutputFormat fmt, std::ostream& out) {
  const auto& pr = r.params;
  const std::string nu = pr.nu ? std::to_string(*pr.nu) : "";
  const std::string sigma = pr.sigma ? fmt_mid(*pr.sigma) : "";
  const std::string c = pr.c ? fmt_double(*pr.c) : "";
  const std::string x = pr.x ? std::to_string(*pr.x) : "";
  const std::string residue = pr.residue ? (*pr.residue > 0 ? "+1" : "-1") : "";
  const std::string beta = pr.beta ? std::to_string(*pr.beta) : "";
  const std::string lhs = r.skipped ? "" : fmt_mid(r.lhs);
  const std::string rhs = r.skipped ? "" : fmt_mid(r.rhs);

  switch (fmt) {
    case OutputFormat::csv:
      out << bounds::to_string(r.id) << ',' << r.p << ',' << nu << ',' << sigma << ',' << c
          << ',' << x << ',' << residue << ',' << beta << ',' << lhs << ',' << rhs << ','
          << status_of(r) << ',' << csv_quote(r.notes) << '\n';
      break;
    case OutputFormat::jsonl: {
      json j{{"bound", bounds::to_string(r.id)}, {"p", r.p}, {"status", status_of(r)},
             {"notes", r.notes}};
      if (pr.nu) j["nu"] = *pr.nu;
      if (pr.sigma) j["sigma"] = ball_to_json(*pr.sigma);
      if (pr.c) j["c"] = *pr.c;
      if (pr.x) j["x"] = *pr.x;
      if (pr.residue) j["residue"] = *pr.residue;
      if (pr.beta) j["beta"] = *pr.beta;
      if (!r.skipped) {
        j["lhs"] = ball_to_json(r.lhs);
        j["rhs"] = ball_to_json(r.rhs);
      }
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::text: {
      out << bounds::to_string(r.id) << " p=" << r.p;
      if (pr.nu) out << " nu=" << nu;
      if (pr.sigma) out << " sigma=" << fmt_mid(*pr.sigma, 12);
      if (pr.c) out << " c=" << c;
      if (pr.x) out << " x=" << x;
      if (pr.residue) out << " class=" << residue;
      if (pr.beta) out << " beta=" << beta;
      if (!r.skipped) out << " lhs=" << fmt_ball(r.lhs, 12) << " rhs=" << fmt_ball(r.rhs, 12);
      out << ' ' << status_of(r);
      if (!r.notes.empty()) out << " (" << r.notes << ')';
      out << '\n';
      break;
    }
  }
}

void write_siegel(const lfunc::SiegelZeroReport& s, OutputFormat fmt, std::ostream& out) {
  auto opt_ball = [](const std::optional<BallReal>& b) { return b ? fmt_ball(*b, 12) : ""; };
  switch (fmt) {
    case OutputFormat::csv:
      out << s.p << ',' << fmt_double(s.c) << ',' << (s.present ? "present" : "absent") << ','
          << yes_no(s.certified) << ',' << lfunc::to_string(s.method) << ','
          << fmt_mid(s.interval_lo) << ',' << (s.beta ? fmt_mid(*s.beta) : "") << ','
          << (s.l_at_left ? fmt_mid(*s.l_at_left) : "") << ','
          << (s.l_at_one ? fmt_mid(*s.l_at_one) : "") << ',' << s.precision_bits << ','
          << csv_quote(s.assumption) << '\n';
      break;
    case OutputFormat::jsonl: {
      json j{{"p", s.p},
             {"c", s.c},
             {"present", s.present},
             {"certified", s.certified},
             {"method", lfunc::to_string(s.method)},
             {"interval_lo", ball_to_json(s.interval_lo)},
             {"precision_bits", s.precision_bits},
             {"assumption", s.assumption}};
      j["beta"] = s.beta ? ball_to_json(*s.beta) : json(nullptr);
      j["l_at_left"] = s.l_at_left ? ball_to_json(*s.l_at_left) : json(nullptr);
      j["l_at_one"] = s.l_at_one ? ball_to_json(*s.l_at_one) : json(nullptr);
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::text:
      out << "p=" << s.p << " c=" << fmt_double(s.c) << ' '
          << (s.present ? "present" : "absent") << " certified=" << yes_no(s.certified)
          << " method=" << lfunc::to_string(s.method)
          << " interval_lo=" << fmt_mid(s.interval_lo, 12);
      if (s.beta) out << " beta=" << opt_ball(s.beta);
      if (s.l_at_left) out << " L_left=" << opt_ball(s.l_at_left);
      if (s.l_at_one) out << " L_one=" << opt_ball(s.l_at_one);
      if (!s.assumption.empty()) out << " (" << s.assumption << ')';
      out << '\n';
      break;
  }
}

}  // namespace

int exit_code(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const PrecisionExhausted&) {
    return 3;
  } catch (const InvalidInput&) {
    return 2;
  } catch (const DomainError&) {
    return 2;
  } catch (const Unsupported&) {
    return 2;
  } catch (...) {
    return 1;
  }
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t from, std::uint64_t to) {
  if (to < 3 || from > to) return {};
  std::vector<std::uint64_t> ps = arith::sieve_primes(to);
  ps.erase(ps.begin(), std::lower_bound(ps.begin(), ps.end(), std::max<std::uint64_t>(from, 3)));
  return ps;
}

int cmd_hminus(const RunConfig& cfg, std::uint64_t p, classnumber::Method method,
               std::optional<long> prec, std::ostream& out) {
  cfg.validate();
  if (p < 3 || !arith::is_prime(p)) throw InvalidInput("not an odd prime: " + std::to_string(p));
  if (p > cfg.hminus_cap)
    throw InvalidInput("p above the class number cap " + std::to_string(cfg.hminus_cap));
  std::optional<PrecisionPolicy> policy;
  if (prec) {
    if (*prec < 64) throw InvalidInput("--prec must be at least 64");
    policy = PrecisionPolicy{*prec, std::max<long>(*prec, cfg.precision.max)};
  }
  auto rec = classnumber::compute(p, method, policy, cfg.precision.initial);

  switch (cfg.format.value_or(OutputFormat::text)) {
    case OutputFormat::csv:
      out << "p,h_minus,log_G,log_ratio,precision_bits,method,certified,integrality_gap\n"
          << p << ',' << rec.h_minus.get_str() << ',' << fmt_mid(rec.log_G) << ','
          << fmt_mid(rec.log_ratio) << ',' << rec.precision_bits << ','
          << classnumber::to_string(rec.method) << ',' << yes_no(rec.certified) << ','
          << (rec.integrality_gap ? fmt_double(*rec.integrality_gap) : "") << '\n';
      break;
    case OutputFormat::jsonl:
      out << record_to_json(rec).dump() << '\n';
      break;
    case OutputFormat::text:
      out << "p=" << p << " h_minus=" << rec.h_minus.get_str()
          << " method=" << classnumber::to_string(rec.method)
          << " certified=" << yes_no(rec.certified) << " precision_bits=" << rec.precision_bits
          << " log_G=" << fmt_ball(rec.log_G) << " log_ratio=" << fmt_ball(rec.log_ratio);
      if (rec.integrality_gap) out << " integrality_gap=" << fmt_double(*rec.integrality_gap);
      out << '\n';
      break;
  }

  Cache cache(cfg.cache_path);
  cache.append({"hminus", p, record_to_json(rec), cfg.fingerprint(), utc_timestamp()});
  return rec.certified ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg, std::uint64_t from, std::uint64_t to, std::ostream& out,
             std::ostream& log) {
  cfg.validate();
  const auto primes = primes_in_range(from, to);
  if (!primes.empty() && primes.back() > cfg.hminus_cap)
    throw InvalidInput("scan range exceeds the class number cap " +
                       std::to_string(cfg.hminus_cap));
  const OutputFormat fmt = cfg.format.value_or(OutputFormat::csv);
  const std::string fp = cfg.fingerprint();
  const double c = cfg.c.value_or(bounds::kMinC);

  Cache cache(cfg.cache_path);
  if (cache.skipped_lines() > 0)
    log << "warning: skipped " << cache.skipped_lines() << " unreadable cache lines\n";

  if (!primes.empty() && fmt == OutputFormat::csv)
    out << "p,h_minus,log_G,log_ratio,siegel_beta,precision_bits,method,certified\n";

  std::size_t computed = 0, reused = 0;
  bool all_certified = true;
  for (std::size_t lo = 0; lo < primes.size(); lo += kScanChunk) {
    const std::size_t hi = std::min(primes.size(), lo + kScanChunk);
    std::vector<json> payloads(hi - lo);
    std::vector<std::size_t> missing;
    for (std::size_t i = lo; i < hi; ++i) {
      if (const CacheEntry* e = cache.find("scan", primes[i], fp)) {
        payloads[i - lo] = e->payload;
        ++reused;
      } else {
        missing.push_back(i);
      }
    }
    for_each_index(missing.size(), Exec::parallel, [&](std::size_t k) {
      const std::uint64_t p = primes[missing[k]];
      const auto method =
          p <= cfg.oracle_ceiling ? classnumber::Method::both : classnumber::Method::analytic;
      auto rec = classnumber::compute(p, method, std::nullopt, cfg.precision.initial);
      auto siegel = lfunc::siegel_scan(p, c, cfg.precision);
      payloads[missing[k] - lo] = scan_payload(rec, siegel);
    });
    // Single writer, ascending p.
    for (std::size_t i : missing) {
      cache.append({"scan", primes[i], payloads[i - lo], fp, utc_timestamp()});
      ++computed;
    }
    for (const json& pl : payloads) {
      write_scan_row(pl, fmt, out);
      all_certified = all_certified && pl.at("certified").get<bool>();
    }
    out.flush();
  }
  log << "computed " << computed << ", reused " << reused << '\n';
  return all_certified ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, bounds::BoundId id, std::uint64_t from, std::uint64_t to,
               std::ostream& out) {
  cfg.validate();
  const auto primes = primes_in_range(from, to);
  const auto reports = bounds::verify(id, primes, cfg.verify_config());
  const OutputFormat fmt = cfg.format.value_or(OutputFormat::text);
  if (!reports.empty() && fmt == OutputFormat::csv)
    out << "bound,p,nu,sigma,c,x,class,beta,lhs,rhs,status,notes\n";

  bool ok = true;
  std::optional<std::uint64_t> largest_failing;
  for (const auto& r : reports) {
    write_report(r, fmt, out);
    if (r.pass) continue;
    largest_failing = std::max(largest_failing.value_or(0), r.p);
    // Failures up to the crossover prime are what the comparison predicts.
    if (id != bounds::BoundId::cor33_crossover || r.p > kCrossoverPrime) ok = false;
  }

  if (id == bounds::BoundId::cor33_crossover && !reports.empty()) {
    std::optional<std::uint64_t> first_pass;
    for (const auto& r : reports)
      if (!r.skipped && r.pass && r.p > largest_failing.value_or(0)) {
        first_pass = r.p;
        break;
      }
    auto opt = [](const std::optional<std::uint64_t>& v) {
      return v ? std::to_string(*v) : std::string("none");
    };
    if (fmt == OutputFormat::jsonl) {
      json j{{"summary", "crossover"}};
      j["largest_failing"] = largest_failing ? json(*largest_failing) : json(nullptr);
      j["first_permanent_pass"] = first_pass ? json(*first_pass) : json(nullptr);
      out << j.dump() << '\n';
    } else {
      out << "crossover: largest_failing=" << opt(largest_failing)
          << " first_permanent_pass=" << opt(first_pass) << '\n';
    }
  }
  return ok ? 0 : 1;
}

int cmd_siegel(const RunConfig& cfg, std::uint64_t from, std::uint64_t to, std::ostream& out) {
  cfg.validate();
  const double c = cfg.c.value_or(bounds::kMinC);
  const auto primes = primes_in_range(from, to);
  std::vector<lfunc::SiegelZeroReport> reports(primes.size());
  for_each_index(primes.size(), Exec::parallel, [&](std::size_t i) {
    reports[i] = lfunc::siegel_scan(primes[i], c, cfg.precision);
  });
  const OutputFormat fmt = cfg.format.value_or(OutputFormat::text);
  if (!reports.empty() && fmt == OutputFormat::csv)
    out << "p,c,verdict,certified,method,interval_lo,beta,l_at_left,l_at_one,precision_bits,"
           "assumption\n";
  bool ok = true;
  for (const auto& r : reports) {
    write_siegel(r, fmt, out);
    ok = ok && r.certified;
  }
  return ok ? 0 : 1;
}

int cmd_pi(const RunConfig& cfg, std::uint64_t p, std::uint64_t x, int residue,
           std::ostream& out) {
  cfg.validate();
  if (p < 3 || !arith::is_prime(p)) throw InvalidInput("not an odd prime: " + std::to_string(p));
  if (residue != 1 && residue != -1) throw InvalidInput("--class must be +1 or -1");
  if (x <= p) throw InvalidInput("x must exceed p");

  const mpfr_prec_t prec = cfg.precision.initial;
  const arith::PiSum s = arith::pi_sum(p, residue, x);
  const BallReal value = BallReal::from_mpq(s.value, prec);
  const bool with_bound = p > 500;
  std::optional<BallReal> bound;
  bool pass = true;
  if (with_bound) {
    bound = arith::bt_bound(p, x, prec);
    pass = certainly_le(value, *bound);
  }
  const std::string cls = residue > 0 ? "+1" : "-1";
  const std::string note = with_bound ? "" : "bound omitted: p <= 500 is outside its domain";

  switch (cfg.format.value_or(OutputFormat::text)) {
    case OutputFormat::csv:
      out << "p,x,class,terms,pi,bound,status,notes\n"
          << p << ',' << x << ',' << cls << ',' << s.terms << ',' << fmt_mid(value) << ','
          << (bound ? fmt_mid(*bound) : "") << ',' << (with_bound ? (pass ? "PASS" : "FAIL") : "")
          << ',' << csv_quote(note) << '\n';
      break;
    case OutputFormat::jsonl: {
      json j{{"p", p},
             {"x", x},
             {"class", residue},
             {"terms", s.terms},
             {"pi", ball_to_json(value)},
             {"pi_exact", s.value.get_str()}};
      if (bound) {
        j["bound"] = ball_to_json(*bound);
        j["pass"] = pass;
      } else {
        j["notes"] = note;
      }
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::text:
      out << "p=" << p << " x=" << x << " class=" << cls << " terms=" << s.terms
          << " pi=" << fmt_mid(value, 12);
      if (bound)
        out << " bound=" << fmt_mid(*bound, 12) << ' ' << (pass ? "PASS" : "FAIL");
      else
        out << " (" << note << ')';
      out << '\n';
      break;
  }
  return pass ? 0 : 1;
}

}  // namespace kummer::cli
