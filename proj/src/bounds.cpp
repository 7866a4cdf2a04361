#include "kummer/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <gmpxx.h>

#include "kummer/arith.hpp"
#include "kummer/classnumber.hpp"
#include "kummer/error.hpp"
#include "kummer/exec.hpp"
#include "kummer/lfunc.hpp"

namespace kummer::bounds {

namespace {

BallReal ball_c(double c, mpfr_prec_t prec) {
  if (!(c > 0) || !std::isfinite(c)) throw DomainError("c must be a positive finite number");
  return BallReal::from_double(c, prec);
}

BallReal factorial(unsigned n, mpfr_prec_t prec) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return BallReal::from_mpz(f, prec);
}

// floor(log nu); e^k is irrational, so the double comparison is safe.
unsigned floor_log(unsigned nu) {
  unsigned k = 0;
  while (std::exp(static_cast<double>(k + 1)) <= static_cast<double>(nu)) ++k;
  return k;
}

void check_c_min(double c) {
  if (!(c >= kMinC)) throw DomainError("c must be at least 6.4355");
}

// 1 + k/(c log p) as a ball.
BallReal right_end(std::uint64_t p, double c, long k, mpfr_prec_t prec) {
  return BallReal(1, prec) + BallReal(k, prec) / (ball_c(c, prec) * log_ui(p, prec));
}

}  // namespace

BallReal c_p_nu(std::uint64_t p, unsigned nu, const BallReal& sigma, double c,
                mpfr_prec_t prec) {
  if (nu == 0) throw DomainError("c_{p,nu} is defined for nu >= 1");
  const mpfr_prec_t wp = prec + 32;
  const BallReal cb = ball_c(c, wp);
  const BallReal L = log_ui(p, wp);
  const BallReal s = sigma.with_prec(wp);
  const unsigned fl = floor_log(nu);
  const BallReal cnu_fact = pow_ui(cb, nu) * factorial(nu - 1, wp);

  BallReal t1 = log_ui(2, wp) / (mul_2si(cnu_fact, 1) * L);
  BallReal t2 = (log(L) + log(cb) - log(log_ui(2, wp)) + exp(BallReal(-1, wp))) / cnu_fact;
  BallReal t3 = BallReal(1, wp) / (cb * L);
  BallReal t4 = s * static_cast<long>(fl) / static_cast<long>(nu - fl);
  BallReal t5 = s * static_cast<long>(nu) / (pow_ui(cb, fl) * factorial(fl, wp));
  return (t1 + t2 + t3 + t4 + t5).with_prec(prec);
}

BallReal lemma22_rhs(std::uint64_t p, unsigned nu, const BallReal& sigma, double c, int beta,
                     mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  const BallReal s = sigma.with_prec(wp);
  if (!certainly_lt(BallReal(1, wp), s)) throw DomainError("sigma must exceed 1");
  if (certainly_lt(right_end(p, c, 1, wp), s)) throw DomainError("sigma beyond 1 + 1/(c log p)");
  const BallReal d = s - 1L;
  const long one_beta = beta ? 1 : 0;
  if (nu == 0) return ((1 + one_beta) * log(BallReal(1, wp) / d) + BallReal::from_double(1.5, wp)).with_prec(prec);
  BallReal k = c_p_nu(p, nu, s, c, wp) + (1 + one_beta);
  return (k * factorial(nu - 1, wp) / pow_ui(d, nu)).with_prec(prec);
}

BallReal lemma23_rhs(std::uint64_t p, unsigned nu, double c, mpfr_prec_t prec) {
  check_c_min(c);
  const mpfr_prec_t wp = prec + 32;
  const BallReal L = log_ui(p, wp);
  const BallReal cb = ball_c(c, wp);
  if (!certainly_lt(cb, BallReal(static_cast<long>(p - 1), wp) / L))
    throw DomainError("needs (p - 1)/log p > c");
  BallReal v = mul_2si(pow_ui(cb, nu) * factorial(nu, wp) * static_cast<long>(p) * pow_ui(L, nu + 1), 1);
  return v.with_prec(prec);
}

SigmaNu sigma_nu(std::uint64_t p, unsigned nu, double c, int beta,
                 std::optional<BallReal> sigma_for_c, mpfr_prec_t prec) {
  if (nu == 0) throw DomainError("sigma_nu is defined for nu >= 1");
  const mpfr_prec_t wp = prec + 32;
  const BallReal cb = ball_c(c, wp);
  const BallReal L = log_ui(p, wp);
  const BallReal s = sigma_for_c ? sigma_for_c->with_prec(wp) : right_end(p, c, 1, wp);
  const BallReal cL = cb * L;
  const BallReal denom = BallReal(static_cast<long>(2 * nu * p), wp) * L;
  const BallReal inv_nu = BallReal(1, wp) / static_cast<long>(nu);
  BallReal num = c_p_nu(p, nu, s, c, wp) + (1L + (beta ? 1L : 0L));

  SigmaNu out;
  out.minus_one = (exp(log(num / denom) * inv_nu) / cL).with_prec(prec);
  out.lower = (BallReal(1, wp) / (cL * exp(log(denom) * inv_nu))).with_prec(prec);
  if (certainly_lt(out.minus_one, out.lower))
    throw InternalError("sigma_nu fell below its stated lower bound");
  return out;
}

BallReal thm31_bound(std::uint64_t p, double c, int beta, mpfr_prec_t prec) {
  if (p <= 500) throw DomainError("bound stated for p > 500");
  check_c_min(c);
  const mpfr_prec_t wp = prec + 32;
  const BallReal cb = ball_c(c, wp);
  const BallReal ec = exp(BallReal(1, wp) / cb);
  const BallReal ll = log(log_ui(p, wp));
  auto dec = [&](const char* s) { return BallReal::from_string(s, wp); };
  BallReal v = (ec + (beta ? 3L : 1L)) * ll + (ec + 3L) * log(cb) + dec("0.791") * ec +
               dec("10.720") + dec("0.943") / cb;
  return v.with_prec(prec);
}

BallReal default_c_ball(std::uint64_t p, mpfr_prec_t prec) {
  if (p < 500) throw DomainError("default c is defined for p >= 500");
  const mpfr_prec_t wp = prec + 32;
  BallReal v = BallReal::from_string("6.4355", wp) * log(log_ui(p, wp)) / log(log_ui(500, wp));
  return v.with_prec(prec);
}

double default_c(std::uint64_t p) {
  BallReal v = default_c_ball(p, 128);
  mpfr_t hi;
  mpfr_init2(hi, 128);
  v.upper(hi);
  double d = mpfr_get_d(hi, MPFR_RNDU);
  mpfr_clear(hi);
  return std::max(d, kMinC);
}

BallReal cor33_rhs(std::uint64_t p, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  BallReal four_pi2 = mul_2si(sqr(const_pi(wp)), 2);
  BallReal quarter = mul_2si(BallReal(static_cast<long>(p - 1), wp), -2);
  return (quarter * log(four_pi2 / 39L)).with_prec(prec);
}

CrossoverReport cor33_crossover(std::uint64_t p_lo, std::uint64_t p_hi, mpfr_prec_t prec) {
  if (p_lo <= 500) throw DomainError("crossover scan needs p > 500");
  CrossoverReport r;
  r.p_lo = p_lo;
  r.p_hi = p_hi;
  if (p_hi < p_lo) return r;
  for (std::uint64_t p : arith::sieve_primes(p_hi)) {
    if (p < p_lo) continue;
    CrossoverPoint pt;
    pt.p = p;
    pt.lhs = thm31_bound(p, default_c(p), 1, prec);
    pt.rhs = cor33_rhs(p, prec);
    pt.pass = certainly_le(pt.lhs, pt.rhs);
    if (!pt.pass && !certainly_lt(pt.rhs, pt.lhs))
      throw Undetermined("crossover comparison undetermined at p = " + std::to_string(p));
    r.points.push_back(std::move(pt));
  }
  for (const auto& pt : r.points)
    if (!pt.pass) r.largest_failing = pt.p;
  for (const auto& pt : r.points) {
    if (r.largest_failing && pt.p <= *r.largest_failing) continue;
    r.first_permanent_pass = pt.p;
    break;
  }
  return r;
}

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::lemma21: return "lemma21";
    case BoundId::lemma22: return "lemma22";
    case BoundId::lemma23: return "lemma23";
    case BoundId::thm31: return "thm31";
    case BoundId::thm11: return "thm11";
    case BoundId::cor33_crossover: return "cor33_crossover";
    case BoundId::eq2_identity: return "eq2_identity";
  }
  return "unknown";
}

BoundId parse_bound_id(const std::string& s) {
  if (s == "lemma21") return BoundId::lemma21;
  if (s == "lemma22") return BoundId::lemma22;
  if (s == "lemma23") return BoundId::lemma23;
  if (s == "thm31") return BoundId::thm31;
  if (s == "thm11") return BoundId::thm11;
  if (s == "cor33" || s == "cor33_crossover") return BoundId::cor33_crossover;
  if (s == "eq2" || s == "eq2_identity") return BoundId::eq2_identity;
  throw InvalidInput("unknown bound: " + s);
}

namespace {

BoundReport skipped(BoundId id, std::uint64_t p, std::string why) {
  BoundReport r;
  r.id = id;
  r.p = p;
  r.skipped = true;
  r.pass = true;
  r.notes = std::move(why);
  return r;
}

std::vector<BoundReport> verify_lemma21(std::uint64_t p, const VerifyConfig& cfg) {
  if (p <= 500) return {skipped(BoundId::lemma21, p, "outside the stated domain p > 500")};
  std::vector<std::uint64_t> xs;
  for (auto k : cfg.x_multiples) xs.push_back(k * p);
  if (cfg.include_p_squared) xs.push_back(p * p);
  for (auto x : cfg.x_absolute) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const mpfr_prec_t prec = cfg.precision.initial;
  std::vector<BoundReport> out;
  for (auto x : xs) {
    if (x <= p) continue;
    for (int a : {1, -1}) {
      BoundReport r;
      r.id = BoundId::lemma21;
      r.p = p;
      r.params.x = x;
      r.params.residue = a;
      r.lhs = BallReal::from_mpq(arith::pi_sum(p, a, x).value, prec);
      r.rhs = arith::bt_bound(p, x, prec);
      r.pass = certainly_le(r.lhs, r.rhs);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<BoundReport> verify_lemma2x(BoundId id, std::uint64_t p, const VerifyConfig& cfg) {
  const double c = cfg.c.value_or(kMinC);
  if (id == BoundId::lemma23 &&
      !(static_cast<double>(p - 1) / std::log(static_cast<double>(p)) > c))
    return {skipped(id, p, "needs (p - 1)/log p > c")};
  const auto& steps = id == BoundId::lemma22 ? cfg.lemma22_steps : cfg.lemma23_steps;
  const unsigned maxnu = cfg.nus.empty() ? 0 : *std::max_element(cfg.nus.begin(), cfg.nus.end());
  const lfunc::SiegelZeroReport siegel = lfunc::siegel_scan(p, std::max(c, kMinC), cfg.precision);
  const int beta = cfg.force_beta || siegel.present ? 1 : 0;

  std::vector<BoundReport> out;
  for (long k : steps) {
    const long limit = id == BoundId::lemma22 ? 1 : 2;
    if (k < 1 || k > limit) {
      BoundReport r = skipped(id, p, "sigma step " + std::to_string(k) + " outside the domain");
      out.push_back(std::move(r));
      continue;
    }
    auto fs = with_escalation(cfg.precision, [&](mpfr_prec_t prec) {
      BallReal sigma = lfunc::sigma_point(p, c, k, prec);
      return lfunc::f_derivatives(p, maxnu, sigma, c, siegel, prec);
    });
    for (unsigned nu : cfg.nus) {
      BoundReport r;
      r.id = id;
      r.p = p;
      r.params.nu = nu;
      r.params.sigma = fs[nu].sigma;
      r.params.c = c;
      r.params.beta = beta;
      r.lhs = abs(fs[nu].value);
      const mpfr_prec_t prec = fs[nu].value.prec();
      r.rhs = id == BoundId::lemma22 ? lemma22_rhs(p, nu, fs[nu].sigma, c, beta, prec)
                                     : lemma23_rhs(p, nu, c, prec);
      r.pass = certainly_le(r.lhs, r.rhs);
      if (siegel.present) r.notes = "Siegel zero subtracted";
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<BoundReport> verify_thm(BoundId id, std::uint64_t p, const VerifyConfig& cfg) {
  if (p <= 500) return {skipped(id, p, "outside the stated domain p > 500")};
  const double c = cfg.c.value_or(default_c(p));
  const lfunc::SiegelZeroReport siegel = lfunc::siegel_scan(p, c, cfg.precision);
  const int beta = cfg.force_beta || siegel.present ? 1 : 0;

  BoundReport r;
  r.id = id;
  r.p = p;
  r.params.c = c;
  r.params.beta = beta;
  const mpfr_prec_t prec = cfg.precision.initial;
  if (id == BoundId::thm31) {
    lfunc::FValue f = with_escalation(cfg.precision, [&](mpfr_prec_t pr) {
      return lfunc::f_at_one(p, c, siegel, pr);
    });
    r.lhs = abs(f.value);
  } else {
    if (p > cfg.hminus_cap) return {skipped(id, p, "above the class number feasibility cap")};
    if (siegel.present) return {skipped(id, p, "surrogate needs the absence of a Siegel zero")};
    auto rec = classnumber::compute(p, classnumber::Method::analytic, std::nullopt, prec);
    r.lhs = abs(rec.log_ratio);
    r.notes = "h_minus=" + rec.h_minus.get_str();
  }
  r.rhs = thm31_bound(p, c, beta, prec);
  r.pass = certainly_le(r.lhs, r.rhs);
  return {r};
}

std::vector<BoundReport> verify_eq2(std::uint64_t p, const VerifyConfig& cfg) {
  const std::uint64_t X = cfg.eq2_truncation;
  if (X / p < p) return {skipped(BoundId::eq2_identity, p, "truncation below p^2")};
  if (cfg.eq2_sigma < 2) throw DomainError("identity checked only for sigma >= 2");
  const mpfr_prec_t prec = cfg.precision.initial;
  const BallReal sigma(cfg.eq2_sigma, prec);
  lfunc::Eq2Residual res = lfunc::eq2_residual(p, sigma, X, prec);

  // Tolerance: the plain tail bound (p-1)/2 X^(1-sigma)/(sigma-1) plus slop.
  const mpfr_prec_t wp = prec + 32;
  BallReal tol = BallReal(static_cast<long>((p - 1) / 2), wp) *
                     exp(log(BallReal(static_cast<long>(X), wp)) * (1L - cfg.eq2_sigma)) /
                     (cfg.eq2_sigma - 1L) +
                 BallReal::from_string("1e-10", wp);

  BoundReport r;
  r.id = BoundId::eq2_identity;
  r.p = p;
  r.params.sigma = sigma;
  r.params.x = X;
  r.lhs = res.residual;
  r.rhs = tol.with_prec(prec);
  BallReal width(0, prec);
  width.add_error(res.residual.rad().mul_2si(1));
  r.pass = res.residual.contains_zero() && certainly_le(abs(width), r.rhs);
  r.notes = "lhs is the residual; pass means it contains 0 and its width is within rhs";
  return {r};
}

std::vector<BoundReport> verify_one(BoundId id, std::uint64_t p, const VerifyConfig& cfg) {
  switch (id) {
    case BoundId::lemma21: return verify_lemma21(p, cfg);
    case BoundId::lemma22:
    case BoundId::lemma23: return verify_lemma2x(id, p, cfg);
    case BoundId::thm31:
    case BoundId::thm11: return verify_thm(id, p, cfg);
    case BoundId::eq2_identity: return verify_eq2(p, cfg);
    case BoundId::cor33_crossover: {
      if (p <= 500) return {skipped(id, p, "outside the stated domain p > 500")};
      const mpfr_prec_t prec = cfg.precision.initial;
      BoundReport r;
      r.id = id;
      r.p = p;
      r.params.c = default_c(p);
      r.params.beta = 1;
      r.lhs = thm31_bound(p, *r.params.c, 1, prec);
      r.rhs = cor33_rhs(p, prec);
      r.pass = certainly_le(r.lhs, r.rhs);
      return {r};
    }
  }
  throw InternalError("unhandled bound id");
}

}  // namespace

std::vector<BoundReport> verify(BoundId id, const std::vector<std::uint64_t>& primes,
                                const VerifyConfig& config) {
  for (auto p : primes)
    if (p < 3 || !arith::is_prime(p)) throw InvalidInput("not an odd prime: " + std::to_string(p));
  std::vector<std::uint64_t> ps = primes;
  std::sort(ps.begin(), ps.end());
  std::vector<std::vector<BoundReport>> per(ps.size());
  for_each_index(ps.size(), Exec::parallel,
                 [&](std::size_t i) { per[i] = verify_one(id, ps[i], config); });
  std::vector<BoundReport> out;
  for (auto& v : per)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace kummer::bounds
