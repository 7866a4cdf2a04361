#include "kummer/lfunc.hpp"

#include <algorithm>
#include <bit>

#include "kummer/arith.hpp"
#include "kummer/error.hpp"

namespace kummer::lfunc {

namespace {

constexpr double kSiegelMinC = 6.4355;

// Extra working bits for character sums of p - 1 terms of size up to p^s.
mpfr_prec_t sum_guard(std::uint64_t p) { return 32 + 2 * std::bit_width(p); }

void check_prime(std::uint64_t p) {
  if (p < 3 || !arith::is_prime(p)) throw InvalidInput("modulus must be an odd prime");
}

// Upper bound of |x| as a Mag.
Mag mag_of(const BallReal& x) { return Mag::from_mpfr(x.mid()) + x.rad(); }

// (log L)^(n) for n = 1..K; index 0 is left default.
std::vector<BallComplex> log_derivs_tail(const std::vector<BallComplex>& l) {
  const std::size_t K = l.empty() ? 0 : l.size() - 1;
  const mpfr_prec_t prec = l.empty() ? 64 : l[0].prec();
  std::vector<BallComplex> out(l.size(), BallComplex(prec));
  if (K == 0) return out;
  if (!abs2(l[0]).is_positive()) throw CannotDivide("L-value enclosure contains zero");
  for (std::size_t n = 1; n <= K; ++n) {
    BallComplex acc = l[n];
    long binom = 1;  // C(n-1, k)
    for (std::size_t k = 1; k < n; ++k) {
      binom = binom * static_cast<long>(n - k) / static_cast<long>(k);
      acc -= out[n - k] * l[k] * BallReal(binom, prec);
    }
    out[n] = acc / l[0];
  }
  return out;
}

BallReal siegel_log_term(const BallReal& d, unsigned nu) {
  if (nu == 0) return log(d);
  long fact = 1;
  for (unsigned i = 2; i < nu; ++i) fact *= static_cast<long>(i);
  BallReal v = BallReal(fact, d.prec()) / pow_ui(d, nu);
  return (nu % 2 == 1) ? v : -v;
}

// L(s, chi_quad), which is real.
BallReal quadratic_l(const chars::CharacterTable& table, const BallReal& s, mpfr_prec_t prec) {
  const std::uint64_t j = (table.p() - 1) / 2;
  return l_value_derivs_many(table, std::span(&j, 1), s, 0, prec, Exec::parallel)[0][0].re;
}

}  // namespace

std::vector<Series> hurwitz_table(const chars::CharacterTable& table, const BallReal& s,
                                  unsigned K, mpfr_prec_t prec, Exec exec) {
  const std::uint64_t p = table.p();
  const std::uint64_t m = table.order();
  const auto params = hurwitz::EulerMaclaurinParams::defaults(prec);
  const unsigned N = params.shift;
  const mpfr_prec_t wp = hurwitz::working_prec(s, prec, params);

  // Head sums for all residues at once: (k + r/p)^(-s-t) = p^(s+t) (kp + r)^(-s-t),
  // and every kp + r comes from one shared table of n^(-s). The table runs
  // one block past the head so that, when it carries logs, the
  // Euler-Maclaurin anchor at N + r/p is read off it too.
  const hurwitz::PowerTable pt = hurwitz::power_table(s, (N + 1) * p, K > 0, wp, exec);
  const bool anchored = !pt.logs.empty();
  const BallReal logp = log_ui(p, wp);
  const BallReal p_s = exp(s.with_prec(wp) * logp);
  const Series p_pow = hurwitz::exp_linear_series(p_s, -logp, K);
  const BallReal p_ball(static_cast<long>(p), wp + 64);

  std::vector<Series> out(m);
  for_each_index(m, exec, [&](std::size_t k) {
    const std::uint64_t r = table.power(k);
    Series head(K + 1, BallReal(wp));
    for (unsigned i = 0; i < N; ++i) {
      const std::uint64_t n = i * p + r;
      head[0] += pt.inv_pow[n];
      BallReal term = pt.inv_pow[n];
      for (unsigned d = 1; d <= K; ++d) {
        term = term * pt.logs[n] / -static_cast<long>(d);
        head[d] += term;
      }
    }
    BallReal a = BallReal(static_cast<long>(r), wp + 64) / p_ball;
    Series sum(K + 1, BallReal(wp));
    if (anchored) {
      const std::uint64_t n = N * p + r;
      hurwitz::TailAnchor anchor{pt.logs[n] - logp, pt.inv_pow[n] * p_s};
      sum = hurwitz::hurwitz_tail_series(s, a, K, prec, params, &anchor);
    } else {
      sum = hurwitz::hurwitz_tail_series(s, a, K, prec, params);
    }
    Series scaled = hurwitz::series_mul(head, p_pow);
    for (unsigned i = 0; i <= K; ++i) sum[i] += scaled[i];
    out[k] = std::move(sum);
  });
  return out;
}

std::vector<ComplexSeries> character_sums(const std::vector<Series>& values,
                                          const chars::RootTable& roots,
                                          std::span<const std::uint64_t> js, Exec exec) {
  const std::uint64_t m = roots.order();
  if (values.size() != m) throw InternalError("character sum length mismatch");
  const std::size_t len = m ? values[0].size() : 0;
  const mpfr_prec_t prec = m ? std::max(values[0][0].prec(), roots.prec()) : roots.prec();
  std::vector<ComplexSeries> out(js.size());
  for_each_index(js.size(), exec, [&](std::size_t idx) {
    const std::uint64_t j = js[idx] % m;
    ComplexSeries acc(len, BallComplex(prec));
    std::uint64_t e = 0;
    for (std::uint64_t k = 0; k < m; ++k) {
      const BallComplex& w = roots[e];
      for (std::size_t i = 0; i < len; ++i) {
        acc[i].re.addmul(values[k][i], w.re);
        acc[i].im.addmul(values[k][i], w.im);
      }
      e += j;
      if (e >= m) e -= m;
    }
    out[idx] = std::move(acc);
  });
  return out;
}

std::vector<std::vector<BallComplex>> l_value_derivs_many(const chars::CharacterTable& table,
                                                          std::span<const std::uint64_t> js,
                                                          const BallReal& s, unsigned K,
                                                          mpfr_prec_t prec, Exec exec) {
  const std::uint64_t p = table.p();
  for (auto j : js)
    if (j % (p - 1) == 0) throw Unsupported("principal character has a pole at s = 1");
  const mpfr_prec_t wp = prec + sum_guard(p);
  std::vector<Series> Z = hurwitz_table(table, s, K, wp, exec);
  const mpfr_prec_t zp = Z[0][0].prec();
  chars::RootTable roots(p - 1, zp);
  std::vector<ComplexSeries> sums = character_sums(Z, roots, js, exec);

  const BallReal logp = log_ui(p, zp);
  const Series ps = hurwitz::exp_linear_series(exp(-(s.with_prec(zp) * logp)), logp, K);

  std::vector<std::vector<BallComplex>> out(js.size());
  for (std::size_t idx = 0; idx < js.size(); ++idx) {
    const ComplexSeries& S = sums[idx];
    std::vector<BallComplex> d(K + 1, BallComplex(zp));
    long fact = 1;
    for (unsigned i = 0; i <= K; ++i) {
      if (i > 0) fact *= static_cast<long>(i);
      BallComplex c(zp);
      for (unsigned k = 0; k <= i; ++k) {
        c.re.addmul(S[k].re, ps[i - k]);
        c.im.addmul(S[k].im, ps[i - k]);
      }
      d[i] = BallComplex((c.re * fact).with_prec(prec), (c.im * fact).with_prec(prec));
    }
    out[idx] = std::move(d);
  }
  return out;
}

std::vector<BallComplex> l_value_derivs(const chars::Character& chi, const BallReal& s,
                                        unsigned K, mpfr_prec_t prec) {
  if (chi.is_principal()) throw Unsupported("principal character has a pole at s = 1");
  chars::CharacterTable table(chi.p);
  const std::uint64_t j = chi.j;
  return l_value_derivs_many(table, std::span(&j, 1), s, K, prec, Exec::serial)[0];
}

std::vector<BallComplex> log_derivs_from_l(const std::vector<BallComplex>& l) {
  if (l.empty()) return {};
  std::vector<BallComplex> out = log_derivs_tail(l);
  out[0] = log(l[0]);
  return out;
}

std::vector<BallComplex> log_l_derivs(const chars::Character& chi, const BallReal& sigma,
                                      unsigned K, mpfr_prec_t prec) {
  return log_derivs_from_l(l_value_derivs(chi, sigma, K, prec));
}

std::string to_string(SiegelMethod m) {
  switch (m) {
    case SiegelMethod::parity: return "parity";
    case SiegelMethod::endpoint_positivity: return "endpoint-positivity";
    case SiegelMethod::bisection: return "bisection";
  }
  return "unknown";
}

BallReal sigma_point(std::uint64_t p, double c, long k, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 16;
  BallReal v = BallReal(1, wp) +
               BallReal(k, wp) / (BallReal::from_double(c, wp) * log_ui(p, wp));
  mpfr_t lo;
  mpfr_init2(lo, prec);
  v.lower(lo);  // rounds toward -inf into prec bits
  BallReal out = BallReal::from_mid_rad(lo, Mag());
  mpfr_clear(lo);
  return out;
}

std::vector<FValue> f_derivatives(std::uint64_t p, unsigned K, const BallReal& sigma, double c,
                                  const SiegelZeroReport& siegel, mpfr_prec_t prec, Exec exec) {
  check_prime(p);
  chars::CharacterTable table(p);
  std::vector<std::uint64_t> js;
  for (std::uint64_t j = 1; j + 1 < p; j += 2) js.push_back(j);
  auto L = l_value_derivs_many(table, js, sigma, K, prec + 16, exec);

  const mpfr_prec_t wp = L[0][0].prec();
  std::vector<BallReal> re(K + 1, BallReal(wp));
  std::vector<BallReal> im(K + 1, BallReal(wp));
  for (const auto& l : L) {
    // Re log L = log |L| on every branch, so order 0 needs no argument.
    BallReal m2 = abs2(l[0]);
    if (!m2.is_positive()) throw CannotDivide("L-value enclosure contains zero");
    re[0] += mul_2si(log(m2), -1);
    std::vector<BallComplex> d = log_derivs_tail(l);
    for (unsigned n = 1; n <= K; ++n) {
      re[n] += d[n].re;
      im[n] += d[n].im;
    }
  }

  std::optional<BallReal> dist;
  if (siegel.present) {
    if (!siegel.beta) throw InternalError("Siegel report marks a zero without its location");
    dist = sigma.with_prec(wp) - *siegel.beta;
    if (!dist->is_positive()) throw DomainError("sigma must exceed the Siegel zero");
  }

  std::vector<FValue> out;
  out.reserve(K + 1);
  for (unsigned n = 0; n <= K; ++n) {
    if (!im[n].contains_zero())
      throw InternalError("conjugate characters failed to cancel imaginary parts");
    BallReal v = re[n];
    v.add_error(mag_of(im[n]));
    if (dist) v -= siegel_log_term(*dist, n);
    FValue f;
    f.p = p;
    f.nu = n;
    f.c = c;
    f.sigma = sigma;
    f.value = v.with_prec(prec);
    f.siegel = siegel;
    out.push_back(std::move(f));
  }
  return out;
}

FValue f_derivative(std::uint64_t p, unsigned nu, const BallReal& sigma, double c,
                    const SiegelZeroReport& siegel, mpfr_prec_t prec) {
  check_prime(p);
  if (!(c > 0)) throw DomainError("c must be positive");
  const mpfr_prec_t wp = sigma.prec() + 16;
  BallReal right = BallReal(1, wp) +
                   BallReal(2, wp) / (BallReal::from_double(c, wp) * log_ui(p, wp));
  if (!certainly_lt(BallReal(1, wp), sigma)) throw DomainError("sigma must exceed 1");
  if (certainly_lt(right, sigma)) throw DomainError("sigma beyond 1 + 2/(c log p)");
  return f_derivatives(p, nu, sigma, c, siegel, prec)[nu];
}

FValue f_at_one(std::uint64_t p, double c, const SiegelZeroReport& siegel, mpfr_prec_t prec) {
  return f_derivatives(p, 0, BallReal(1, prec), c, siegel, prec)[0];
}

FValue f_at_one(std::uint64_t p, double c, mpfr_prec_t prec) {
  PrecisionPolicy policy{prec, std::max<mpfr_prec_t>(prec, 4096)};
  return f_at_one(p, c, siegel_scan(p, c, policy), prec);
}

Eq2Residual eq2_residual(std::uint64_t p, const BallReal& sigma, std::uint64_t truncation,
                         mpfr_prec_t prec) {
  check_prime(p);
  if (!(sigma.lower_double() >= 2.0)) throw DomainError("identity checked only for sigma >= 2");
  if (truncation / p < p) throw DomainError("truncation must be at least p^2");

  Eq2Residual r;
  r.p = p;
  r.sigma = sigma;
  r.truncation = truncation;
  const mpfr_prec_t wp = prec + 32;

  chars::CharacterTable table(p);
  std::vector<std::uint64_t> js;
  for (std::uint64_t j = 1; j + 1 < p; j += 2) js.push_back(j);
  auto L = l_value_derivs_many(table, js, sigma, 0, wp, Exec::parallel);
  BallComplex lhs(wp);
  for (const auto& l : L) lhs += log(l[0]);

  // Weights 1/(m q^(m sigma)); exact powers when sigma is a small integer.
  long int_sigma = 0;
  if (sigma.is_exact() && mpfr_integer_p(sigma.mid()) && mpfr_cmp_ui(sigma.mid(), 8) <= 0)
    int_sigma = mpfr_get_si(sigma.mid(), MPFR_RNDN);
  const BallReal s = sigma.with_prec(wp);
  auto class_sum = [&](int a, std::size_t& terms) {
    BallReal acc(wp);
    const auto pp = arith::prime_powers_in_class(p, a, truncation);
    terms = pp.size();
    for (const auto& t : pp) {
      if (int_sigma > 0) {
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), t.value, static_cast<unsigned long>(int_sigma));
        d *= t.m;
        acc += BallReal(1, wp) / BallReal::from_mpz(d, wp);
      } else {
        BallReal lq = log_ui(t.q, wp) * static_cast<long>(t.m);
        acc += exp(-(s * lq)) / static_cast<long>(t.m);
      }
    }
    return acc;
  };
  const long half = static_cast<long>((p - 1) / 2);
  BallReal plus = class_sum(1, r.terms_plus);
  BallReal minus = class_sum(-1, r.terms_minus);
  r.rhs = (plus - minus) * half;

  // Every neglected n > X in one residue class contributes at most n^-sigma;
  // with spacing p the sum is below X^-sigma + X^(1-sigma) / (p (sigma - 1)).
  const BallReal X(static_cast<long>(truncation), wp);
  const BallReal logx = log(X);
  BallReal per_class = exp(-(s * logx)) +
                       exp((1L - s) * logx) / (BallReal(static_cast<long>(p), wp) * (s - 1L));
  r.tail = per_class * half;

  r.lhs = lhs.re;
  BallReal res = lhs.re - r.rhs;
  res.add_error(mag_of(r.tail));
  res.add_error(mag_of(lhs.im));  // a branch slip shows up here as 2 pi k
  r.residual = res;
  return r;
}

SiegelZeroReport siegel_scan(std::uint64_t p, double c, const PrecisionPolicy& policy) {
  check_prime(p);
  if (!(c >= kSiegelMinC)) throw DomainError("Siegel region needs c >= 6.4355");
  SiegelZeroReport rep;
  rep.p = p;
  rep.c = c;
  auto left_endpoint = [&](mpfr_prec_t prec) {
    return BallReal(1, prec) -
           BallReal(1, prec) / (BallReal::from_double(c, prec) * log_ui(p, prec));
  };

  if (p % 4 == 1) {
    rep.interval_lo = left_endpoint(policy.initial);
    rep.method = SiegelMethod::parity;
    rep.certified = true;
    rep.assumption = "p = 1 mod 4: the quadratic character is even, so no odd L-function is quadratic";
    rep.precision_bits = policy.initial;
    return rep;
  }

  chars::CharacterTable table(p);
  return with_escalation(policy, [&](mpfr_prec_t prec) {
    SiegelZeroReport r = rep;
    r.precision_bits = prec;
    r.interval_lo = left_endpoint(prec);
    r.assumption =
        "the region holds at most one zero, real and simple; with L(1) > 0 a positive "
        "value at the left endpoint excludes it";
    BallReal l1 = quadratic_l(table, BallReal(1, prec), prec);
    r.l_at_one = l1;
    if (l1.is_negative()) throw InternalError("L(1, chi) < 0 for a quadratic character");
    if (!l1.is_positive()) throw Undetermined("sign of L(1, chi_quad) undetermined");

    BallReal l0 = quadratic_l(table, r.interval_lo, prec);
    r.l_at_left = l0;
    if (l0.is_positive()) {
      r.method = SiegelMethod::endpoint_positivity;
      r.certified = true;
      return r;
    }
    if (!l0.is_negative()) throw Undetermined("sign of L at the left endpoint undetermined");

    // L changes sign: locate the zero between an exact point at or right of
    // the endpoint where L < 0, and 1.
    mpfr_t hi;
    mpfr_init2(hi, prec);
    r.interval_lo.upper(hi);
    BallReal lo_pt = BallReal::from_mid_rad(hi, Mag());
    mpfr_clear(hi);
    auto sign = [&](const BallReal& x) {
      BallReal v = quadratic_l(table, x, prec);
      if (v.is_negative()) return -1;
      if (v.is_positive()) return 1;
      throw Undetermined("sign of L undetermined during bisection");
    };
    if (sign(lo_pt) > 0) throw Undetermined("endpoint sign changed under rounding");
    r.beta = bisect_root(lo_pt, BallReal(1, prec), prec / 4, sign);
    r.present = true;
    r.method = SiegelMethod::bisection;
    r.certified = true;
    return r;
  });
}

}  // namespace kummer::lfunc
