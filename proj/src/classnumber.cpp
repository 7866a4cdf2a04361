#include "kummer/classnumber.hpp"

#include <cmath>

#include "kummer/arith.hpp"
#include "kummer/error.hpp"

namespace kummer::classnumber {

namespace {

void check_prime(std::uint64_t p) {
  if (p < 3 || !arith::is_prime(p)) throw InvalidInput("p must be an odd prime");
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::analytic: return "analytic";
    case Method::maillet: return "maillet";
    case Method::both: return "both";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  if (s == "analytic") return Method::analytic;
  if (s == "maillet") return Method::maillet;
  if (s == "both") return Method::both;
  throw InvalidInput("unknown method: " + s);
}

BallComplex b1_chi(const chars::Character& chi, mpfr_prec_t prec) {
  if (chi.parity != chars::Parity::odd) throw DomainError("B_{1,chi} used only for odd chi");
  chars::CharacterTable table(chi.p);
  const mpfr_prec_t wp = prec + 32;
  BallComplex acc(wp);
  for (std::uint64_t a = 1; a < chi.p; ++a) {
    auto v = chars::character_value(chi, table, static_cast<std::int64_t>(a), wp);
    acc.re.addmul(v.value.re, static_cast<long>(a));
    acc.im.addmul(v.value.im, static_cast<long>(a));
  }
  BallReal p(static_cast<long>(chi.p), wp);
  return BallComplex((acc.re / p).with_prec(prec), (acc.im / p).with_prec(prec));
}

std::vector<BallComplex> scaled_b1_odd(const chars::CharacterTable& table, mpfr_prec_t prec,
                                       Exec exec) {
  const std::uint64_t p = table.p();
  const std::uint64_t m = p - 1;
  const std::uint64_t n = m / 2;
  chars::RootTable roots(m, prec);
  std::vector<long> coef(n);
  for (std::uint64_t k = 0; k < n; ++k)
    coef[k] = 2 * static_cast<long>(table.power(k)) - static_cast<long>(p);

  std::vector<BallComplex> out(n, BallComplex(prec));
  for_each_index(n, exec, [&](std::size_t idx) {
    const std::uint64_t j = 2 * idx + 1;
    BallComplex acc(prec);
    std::uint64_t e = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const BallComplex& w = roots[e];
      acc.re.addmul(w.re, coef[k]);
      acc.im.addmul(w.im, coef[k]);
      e += j;
      if (e >= m) e -= m;
    }
    out[idx] = std::move(acc);
  });
  return out;
}

PrecisionPolicy analytic_policy(std::uint64_t p) {
  const double pd = static_cast<double>(p);
  const auto bits = static_cast<mpfr_prec_t>(std::ceil(pd / 4.0 * std::log2(pd))) + 128;
  return PrecisionPolicy{bits, 4 * bits};
}

AnalyticProduct analytic_product(std::uint64_t p, mpfr_prec_t prec, Exec exec) {
  check_prime(p);
  chars::CharacterTable table(p);
  const std::vector<BallComplex> s = scaled_b1_odd(table, prec, exec);
  // h = 2p prod(-S_j / 2p) = 2p prod(-S_j) / (2p)^n.
  BallComplex prod(BallReal(1, prec));
  for (const auto& v : s) prod = prod * (-v);
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2 * p, s.size());
  BallReal scale = BallReal(static_cast<long>(2 * p), prec) / BallReal::from_mpz(denom, prec);
  return {prod * scale, prec};
}

RelativeClassNumberRecord hminus_analytic(std::uint64_t p) {
  return hminus_analytic(p, analytic_policy(p));
}

RelativeClassNumberRecord hminus_analytic(std::uint64_t p, const PrecisionPolicy& policy,
                                          Exec exec) {
  check_prime(p);
  if (p > kAnalyticCap) throw InvalidInput("p above the analytic feasibility cap");
  return with_escalation(policy, [&](mpfr_prec_t prec) {
    AnalyticProduct a = analytic_product(p, prec, exec);
    const BallReal& re = a.value.re;
    if (!a.value.im.contains_zero())
      throw InternalError("imaginary part of the class number product is not zero");
    if (!(re.rad() < Mag::from_double(0.25)))
      throw Undetermined("class number product too wide to pin an integer");

    mpfr_t r;
    mpfr_init2(r, mpfr_get_prec(re.mid()));
    mpfr_rint(r, re.mid(), MPFR_RNDN);
    mpz_class h;
    mpfr_get_z(h.get_mpz_t(), r, MPFR_RNDN);
    mpfr_sub(r, r, re.mid(), MPFR_RNDN);
    const double gap = std::fabs(mpfr_get_d(r, MPFR_RNDU));
    mpfr_clear(r);
    if (!(gap < 0.25) || !re.contains(BallReal::from_mpz(h, re.prec())))
      throw Undetermined("class number product not near an integer");
    if (h < 1) throw InternalError("class number product rounds below 1");

    RelativeClassNumberRecord rec;
    rec.p = p;
    rec.h_minus = h;
    rec.method = Method::analytic;
    rec.precision_bits = prec;
    rec.certified = true;
    rec.integrality_gap = gap;
    return rec;
  });
}

mpz_class bareiss_determinant(std::vector<mpz_class> m, std::size_t n, Exec exec) {
  if (m.size() != n * n) throw InvalidInput("matrix is not square");
  if (n == 0) return 1;
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return m[i * n + j]; };
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    const std::size_t rows = n - k - 1;
    for_each_index(rows, exec, [&](std::size_t off) {
      const std::size_t i = k + 1 + off;
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    });
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

std::vector<mpz_class> maillet_matrix(std::uint64_t p) {
  check_prime(p);
  const std::uint64_t n = (p - 1) / 2;
  std::vector<mpz_class> m(n * n);
  for (std::uint64_t b = 1; b <= n; ++b) {
    const std::uint64_t inv = arith::powmod(b, p - 2, p);
    for (std::uint64_t a = 1; a <= n; ++a) m[(a - 1) * n + (b - 1)] = a * inv % p;
  }
  return m;
}

mpz_class maillet_determinant(std::uint64_t p, Exec exec) {
  return bareiss_determinant(maillet_matrix(p), (p - 1) / 2, exec);
}

mpz_class maillet_hminus(std::uint64_t p, Exec exec) {
  mpz_class d = abs(maillet_determinant(p, exec));
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, (p - 3) / 2);
  if (!mpz_divisible_p(d.get_mpz_t(), pk.get_mpz_t()))
    throw InternalError("Maillet determinant not divisible by p^((p-3)/2)");
  mpz_class h = d / pk;
  if (h < 1) throw InternalError("Maillet determinant vanished");
  return h;
}

BallReal g_factor_log(std::uint64_t p, mpfr_prec_t prec) {
  check_prime(p);
  const mpfr_prec_t wp = prec + 32;
  BallReal four_pi2 = mul_2si(sqr(const_pi(wp)), 2);
  BallReal quarter = mul_2si(BallReal(static_cast<long>(p - 1), wp), -2);
  BallReal v = log_ui(2 * p, wp) + quarter * (log_ui(p, wp) - log(four_pi2));
  return v.with_prec(prec);
}

BallReal kummer_log_ratio(std::uint64_t p, const mpz_class& h, mpfr_prec_t prec) {
  if (h < 1) throw DomainError("h must be a positive integer");
  const mpfr_prec_t wp = prec + 32;
  return (log(BallReal::from_mpz(h, wp)) - g_factor_log(p, wp)).with_prec(prec);
}

RelativeClassNumberRecord compute(std::uint64_t p, Method method,
                                  std::optional<PrecisionPolicy> policy,
                                  mpfr_prec_t report_prec) {
  check_prime(p);
  RelativeClassNumberRecord rec;
  if (method == Method::maillet) {
    rec.p = p;
    rec.h_minus = maillet_hminus(p);
    rec.method = Method::maillet;
    rec.certified = true;
  } else {
    rec = hminus_analytic(p, policy ? *policy : analytic_policy(p));
    if (method == Method::both) {
      if (maillet_hminus(p) != rec.h_minus)
        throw InternalError("analytic and Maillet class numbers disagree at p = " +
                            std::to_string(p));
      rec.method = Method::both;
    }
  }
  rec.log_G = g_factor_log(p, report_prec);
  rec.log_ratio = kummer_log_ratio(p, rec.h_minus, report_prec);
  return rec;
}

}  // namespace kummer::classnumber
