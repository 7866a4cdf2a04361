#include "kummer/hurwitz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "kummer/error.hpp"

namespace kummer::hurwitz {

namespace {

// Tangent numbers T_1..T_n (Brent and Harvey's in-place recurrence).
std::vector<mpz_class> tangent_numbers(unsigned n) {
  std::vector<mpz_class> t(n + 1);
  if (n == 0) return t;
  t[1] = 1;
  for (unsigned k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (unsigned k = 2; k <= n; ++k)
    for (unsigned j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  return t;
}

struct BernoulliCache {
  std::mutex mu;
  std::vector<mpq_class> even;      // B_{2j}, index j-1
  std::vector<mpq_class> over_fact; // B_{2j}/(2j)!, index j-1

  void ensure(unsigned count) {
    if (even.size() >= count) return;
    unsigned n = std::max<unsigned>(count, 2 * static_cast<unsigned>(even.size()));
    std::vector<mpz_class> t = tangent_numbers(n);
    even.assign(n, mpq_class());
    over_fact.assign(n, mpq_class());
    mpz_class fact = 1;
    for (unsigned k = 1; k <= n; ++k) {
      fact *= (2 * k - 1);
      fact *= (2 * k);
      mpz_class four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 2, 2 * k);
      mpq_class b(2 * k * t[k], four_k * (four_k - 1));
      b.canonicalize();
      if (k % 2 == 0) b = -b;
      even[k - 1] = b;
      over_fact[k - 1] = b / fact;
      over_fact[k - 1].canonicalize();
    }
  }
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

// I_i(w) = integral_0^1 v^i e^(-w v) dv for i = 0..K, via the power series
// sum_n (-w)^n / (n! (n + i + 1)) with a geometric tail bound.
std::vector<BallReal> exp_moment_integrals(const BallReal& w, unsigned K, mpfr_prec_t wp) {
  std::vector<BallReal> I(K + 1, BallReal(wp));
  const double wabs = std::max(std::fabs(w.lower_double()), std::fabs(w.upper_double()));
  BallReal u(1, wp);
  BallReal neg_w = -w;
  const Mag eps = Mag::pow2(-static_cast<long>(wp) - 8);
  for (unsigned long n = 0;; ++n) {
    if (static_cast<double>(n) + 1.0 >= 2.0 * wabs + 2.0) {
      Mag umag = Mag::from_mpfr(u.mid()) + u.rad();
      if (umag <= eps) {
        Mag tail = umag.mul_2si(1);
        for (auto& v : I) v.add_error(tail);
        break;
      }
    }
    for (unsigned i = 0; i <= K; ++i) I[i] += u / static_cast<long>(n + i + 1);
    u = u * neg_w / static_cast<long>(n + 1);
    if (n > 100000) throw PrecisionExhausted("exponential moment series did not converge");
  }
  return I;
}

// Euler-Maclaurin remainder bound on the disc of radius 1/2 around s0,
// turned into bounds for each Taylor coefficient by Cauchy's estimate.
Mag remainder_bound(const BallReal& s0, const BallReal& a, unsigned N, unsigned M) {
  constexpr mpfr_prec_t bp = 64;
  const double rho = 0.5;
  double s_abs = std::max(std::fabs(s0.upper_double()), std::fabs(s0.lower_double()));
  s_abs = std::nextafter(s_abs + rho, INFINITY);
  double sigma_min = std::nextafter(s0.lower_double() - rho, -INFINITY);
  double a_lo = std::max(0.0, a.lower_double());
  const long two_m = 2L * M;

  // Everything except the (N + a) power depends only on (s, M); many calls
  // in a row share it.
  struct Prefix {
    double s_abs = -1, sigma_min = 0;
    long two_m = -1;
    BallReal log_r{bp}, exponent{bp};
  };
  thread_local Prefix pre;
  if (pre.s_abs != s_abs || pre.sigma_min != sigma_min || pre.two_m != two_m) {
    BallReal S = BallReal::from_double(s_abs, bp);
    BallReal sig = BallReal::from_double(sigma_min, bp);
    BallReal log_r = log(BallReal(4, bp)) - log(mul_2si(const_pi(bp), 1)) * two_m;
    for (long i = 0; i < two_m; ++i) log_r += log(S + i);
    BallReal denom = sig + (two_m - 1);
    if (!denom.is_positive()) throw PrecisionExhausted("Euler-Maclaurin remainder undefined");
    pre.log_r = log_r - log(denom);
    pre.exponent = 1L - sig - two_m;
    pre.s_abs = s_abs;
    pre.sigma_min = sigma_min;
    pre.two_m = two_m;
  }

  BallReal base = BallReal::from_double(a_lo, bp) + static_cast<long>(N);
  BallReal r = exp(pre.log_r + pre.exponent * log(base));
  if (!r.is_finite()) throw PrecisionExhausted("Euler-Maclaurin remainder did not converge");
  mpfr_t hi;
  mpfr_init2(hi, bp);
  r.upper(hi);
  Mag out = Mag::from_mpfr(hi);
  mpfr_clear(hi);
  return out;
}

}  // namespace

EulerMaclaurinParams EulerMaclaurinParams::defaults(mpfr_prec_t prec) {
  EulerMaclaurinParams p;
  p.shift = std::max<unsigned>(32, static_cast<unsigned>(std::ceil(0.35 * static_cast<double>(prec))));
  p.corrections = static_cast<unsigned>(std::ceil(0.2 * static_cast<double>(prec)));
  p.guard_bits = 32;
  return p;
}

std::vector<mpq_class> bernoulli_over_factorial(unsigned count) {
  auto& c = bernoulli_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.ensure(count);
  return {c.over_fact.begin(), c.over_fact.begin() + count};
}

const std::vector<BallReal>& bernoulli_balls(unsigned count, mpfr_prec_t prec) {
  thread_local std::map<mpfr_prec_t, std::vector<BallReal>> cache;
  auto& v = cache[prec];
  if (v.size() < count) {
    const std::vector<mpq_class> q = bernoulli_over_factorial(count);
    v.clear();
    for (const auto& b : q) v.push_back(BallReal::from_mpq(b, prec));
  }
  return v;
}

std::vector<mpq_class> bernoulli_even(unsigned count) {
  auto& c = bernoulli_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  c.ensure(count);
  return {c.even.begin(), c.even.begin() + count};
}

Series series_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  mpfr_prec_t p = n ? std::max(a[0].prec(), b[0].prec()) : 64;
  Series c(n, BallReal(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= i; ++k) c[i].addmul(a[k], b[i - k]);
  return c;
}

Series exp_linear_series(const BallReal& c, const BallReal& L, unsigned K) {
  Series out;
  out.reserve(K + 1);
  out.push_back(c);
  BallReal neg_l = -L;
  for (unsigned i = 1; i <= K; ++i) out.push_back(out.back() * neg_l / static_cast<long>(i));
  return out;
}

std::vector<BallReal> series_to_derivs(const Series& s) {
  std::vector<BallReal> d;
  d.reserve(s.size());
  long fact = 1;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    d.push_back(s[k] * fact);
  }
  return d;
}

Series hurwitz_regular_series(const BallReal& s0, const BallReal& a, unsigned K, mpfr_prec_t prec) {
  return hurwitz_regular_series(s0, a, K, prec, EulerMaclaurinParams::defaults(prec));
}

mpfr_prec_t working_prec(const BallReal& s0, mpfr_prec_t prec, const EulerMaclaurinParams& params) {
  // (N + a)^(1 - s) loses about (s - 1) log2(N + 1) bits to cancellation
  // against the pole part when s > 1.
  const double log_shift = std::log(static_cast<double>(params.shift) + 1.0);
  const double w_est = (s0.upper_double() - 1.0) * log_shift;
  const mpfr_prec_t extra = w_est > 0 ? static_cast<mpfr_prec_t>(std::ceil(1.45 * w_est)) + 4 : 0;
  return prec + params.guard_bits + extra;
}

namespace {

long small_integer(const BallReal& s) {
  if (s.is_exact() && mpfr_integer_p(s.mid()) && mpfr_sgn(s.mid()) > 0 &&
      mpfr_cmp_ui(s.mid(), 64) <= 0)
    return mpfr_get_si(s.mid(), MPFR_RNDN);
  return 0;
}

}  // namespace

Series hurwitz_tail_series(const BallReal& s0, const BallReal& a, unsigned K, mpfr_prec_t prec,
                           const EulerMaclaurinParams& params, const TailAnchor* anchor) {
  if (!(s0.lower_double() > 0.75)) throw DomainError("Hurwitz zeta evaluated only for s > 0.75");
  if (!a.is_positive() || a.upper_double() > 1.0 + 1e-9)
    throw DomainError("Hurwitz parameter a must lie in (0, 1]");

  const unsigned N = params.shift;
  const unsigned M = params.corrections;
  const mpfr_prec_t wp = working_prec(s0, prec, params);

  const BallReal s = s0.with_prec(wp);
  const BallReal av = a.with_prec(wp);
  Series out(K + 1, BallReal(wp));

  BallReal L(wp), baseN(wp);
  if (anchor) {
    L = anchor->log_shift.with_prec(wp);
    baseN = anchor->pow_shift.with_prec(wp);
  } else {
    const BallReal shifted = av + static_cast<long>(N);
    L = log(shifted);
    const long int_s = small_integer(s);
    baseN = int_s ? BallReal(1, wp) / pow_ui(shifted, int_s) : exp(-(s * L));
  }
  const Series E = exp_linear_series(baseN, L, K);

  // Integral term with the pole removed: ((N + a)^(1-s) - 1) / (s - 1)
  // = -L * integral_0^1 e^(-(s-1) L v) dv.
  {
    std::vector<BallReal> I = exp_moment_integrals((s - 1L) * L, K, wp);
    BallReal lpow = L;
    long fact = 1;
    for (unsigned i = 0; i <= K; ++i) {
      if (i > 0) {
        fact *= static_cast<long>(i);
        lpow = lpow * L;
      }
      BallReal term = lpow * I[i] / fact;
      if (i % 2 == 0) term = -term;
      out[i] += term;
    }
  }

  // Boundary term (N + a)^(-s) / 2.
  for (unsigned i = 0; i <= K; ++i) out[i] += mul_2si(E[i], -1);

  // Bernoulli corrections: sum_j B_2j/(2j)! (s)_{2j-1} (N + a)^(-s-2j+1).
  if (M > 0) {
    const std::vector<BallReal>& bern = bernoulli_balls(M, wp);
    const BallReal inv = BallReal(1, wp) / (av + static_cast<long>(N));
    const BallReal inv2 = sqr(inv);
    BallReal q = inv;
    Series P(K + 1, BallReal(wp));  // rising factorial (s)_{2j-1} as a series in t
    P[0] = s;
    if (K >= 1) P[1] = BallReal(1, wp);
    Series T(K + 1, BallReal(wp));
    auto times_linear = [&](const BallReal& b) {
      for (unsigned i = K + 1; i-- > 0;) {
        BallReal v = P[i] * b;
        if (i > 0) v += P[i - 1];
        P[i] = std::move(v);
      }
    };
    for (unsigned j = 1; j <= M; ++j) {
      BallReal c = bern[j - 1] * q;
      for (unsigned i = 0; i <= K; ++i) T[i].addmul(c, P[i]);
      if (j < M) {
        times_linear(s + static_cast<long>(2 * j - 1));
        times_linear(s + static_cast<long>(2 * j));
        q = q * inv2;
      }
    }
    Series corr = series_mul(T, E);
    for (unsigned i = 0; i <= K; ++i) out[i] += corr[i];
  }

  Mag r = remainder_bound(s0, a, N, M);
  for (unsigned i = 0; i <= K; ++i) out[i].add_error(r.mul_2si(static_cast<long>(i)));
  return out;
}

Series hurwitz_regular_series(const BallReal& s0, const BallReal& a, unsigned K, mpfr_prec_t prec,
                              const EulerMaclaurinParams& params) {
  Series out = hurwitz_tail_series(s0, a, K, prec, params);
  const mpfr_prec_t wp = out[0].prec();
  const BallReal s = s0.with_prec(wp);
  const BallReal av = a.with_prec(wp);
  // Head: sum_{k < N} (k + a)^(-s).
  for (unsigned k = 0; k < params.shift; ++k) {
    BallReal lw = log(av + static_cast<long>(k));
    Series e = exp_linear_series(exp(-(s * lw)), lw, K);
    for (unsigned i = 0; i <= K; ++i) out[i] += e[i];
  }
  return out;
}

PowerTable power_table(const BallReal& s0, std::uint64_t limit, bool with_logs, mpfr_prec_t prec,
                       Exec exec) {
  PowerTable t;
  t.limit = limit;
  if (limit < 2) return t;
  std::vector<std::uint32_t> spf(limit, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t n = 2; n < limit; ++n) {
    if (spf[n] == 0) {
      spf[n] = static_cast<std::uint32_t>(n);
      primes.push_back(static_cast<std::uint32_t>(n));
    }
    for (std::uint32_t q : primes) {
      if (q > spf[n] || n * q >= limit) break;
      spf[n * q] = q;
    }
  }

  const BallReal s = s0.with_prec(prec);
  const long int_s = small_integer(s);
  // For non-integer s the logs come for free with the powers.
  if (!int_s) with_logs = true;

  t.inv_pow.assign(limit, BallReal(prec));
  if (with_logs) t.logs.assign(limit, BallReal(prec));
  t.inv_pow[1] = BallReal(1, prec);

  for_each_index(primes.size(), exec, [&](std::size_t i) {
    const std::uint32_t q = primes[i];
    if (int_s) {
      t.inv_pow[q] = BallReal(1, prec) / pow_ui(BallReal(static_cast<long>(q), prec), int_s);
      if (with_logs) t.logs[q] = log_ui(q, prec);
    } else {
      BallReal lq = log_ui(q, prec);
      t.inv_pow[q] = exp(-(s * lq));
      t.logs[q] = std::move(lq);
    }
  });

  // n / spf(n) <= n / 2, so each dyadic block only reads earlier blocks.
  for (std::uint64_t lo = 4; lo < limit; lo *= 2) {
    const std::uint64_t hi = std::min<std::uint64_t>(limit, 2 * lo);
    for_each_index(hi - lo, exec, [&](std::size_t off) {
      const std::uint64_t n = lo + off;
      const std::uint32_t q = spf[n];
      if (q == n) return;
      t.inv_pow[n] = t.inv_pow[q] * t.inv_pow[n / q];
      if (with_logs) t.logs[n] = t.logs[q] + t.logs[n / q];
    });
  }
  // n = 2, 3 are prime and already set.
  return t;
}

std::vector<BallReal> hurwitz_zeta_derivs(const BallReal& s, const mpq_class& a, unsigned K,
                                          mpfr_prec_t prec) {
  if (prec < 64) throw DomainError("Hurwitz zeta needs at least 64 bits");
  if (a <= 0 || a > 1) throw DomainError("Hurwitz parameter a must lie in (0, 1]");
  BallReal sm1 = s - 1L;
  if (sm1.contains_zero()) throw PoleError("Hurwitz zeta has a pole at s = 1");
  BallReal av = BallReal::from_mpq(a, prec + 64);
  Series reg = hurwitz_regular_series(s, av, K, prec);
  const mpfr_prec_t wp = reg[0].prec();
  BallReal inv = BallReal(1, wp) / sm1.with_prec(wp);
  BallReal pole = inv;
  for (unsigned i = 0; i <= K; ++i) {
    reg[i] += (i % 2 == 0) ? pole : -pole;
    pole = pole * inv;
  }
  std::vector<BallReal> d = series_to_derivs(reg);
  for (auto& v : d) v = v.with_prec(prec);
  return d;
}

}  // namespace kummer::hurwitz
