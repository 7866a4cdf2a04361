#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kummer/arith.hpp"
#include "kummer/classnumber.hpp"
#include "kummer/error.hpp"
#include "kummer/lfunc.hpp"
#include "support.hpp"

using namespace kummer;
using namespace kummer::lfunc;
using testsupport::encloses;

namespace {

struct Ref {
  mpfr_t v;
  Ref() { mpfr_init2(v, 600); }
  ~Ref() { mpfr_clear(v); }
  operator mpfr_ptr() { return v; }
};

// Dirichlet series partial sum in long double; the tail is at most about
// p N^-s by partial summation since character sums over a period vanish.
std::complex<long double> l_series(std::uint64_t p, std::uint64_t j, double s, std::uint64_t N) {
  chars::CharacterTable t(p);
  const long double two_pi = 6.283185307179586476925286766559L;
  std::vector<std::complex<long double>> chi(p);
  for (std::uint64_t n = 1; n < p; ++n) {
    const long double ang = two_pi * static_cast<long double>((j * t.dlog(n)) % (p - 1)) / (p - 1);
    chi[n] = {std::cos(ang), std::sin(ang)};
  }
  std::complex<long double> sum = 0;
  for (std::uint64_t n = N; n >= 1; --n) sum += chi[n % p] * std::pow((long double)n, -(long double)s);
  return sum;
}

}  // namespace

TEST_CASE("L(1) for quadratic characters in closed form") {
  Ref pi, r;
  mpfr_const_pi(pi, MPFR_RNDN);
  // pi / (3 sqrt 3)
  mpfr_sqrt_ui(r, 3, MPFR_RNDN);
  mpfr_mul_ui(r, r, 3, MPFR_RNDN);
  mpfr_div(r, pi, r, MPFR_RNDN);
  auto l3 = l_value_derivs(chars::quadratic_character(3), BallReal(1, 128), 0, 128);
  CHECK(encloses(l3[0].re, r));
  CHECK(l3[0].im.contains_zero());
  CHECK(std::fabs(l3[0].re.mid_double() - 0.6045997880780726) < 1e-15);

  // pi h(-p) / sqrt p with h(-p) = sum_{a < p/2} (a/p) / (2 - (2/p)).
  for (std::uint64_t p : {7ULL, 11ULL, 19ULL, 23ULL, 43ULL, 103ULL, 163ULL, 199ULL}) {
    long s = 0;
    for (std::uint64_t a = 1; a < p / 2 + 1; ++a) s += chars::legendre(a, p);
    const long h = s / (2 - chars::legendre(2, p));
    mpfr_sqrt_ui(r, p, MPFR_RNDN);
    mpfr_div(r, pi, r, MPFR_RNDN);
    mpfr_mul_si(r, r, h, MPFR_RNDN);
    auto l = l_value_derivs(chars::quadratic_character(p), BallReal(1, 128), 0, 128);
    CHECK(encloses(l[0].re, r));
    CHECK(l[0].re.rad_double() < 1e-30);
  }
}

TEST_CASE("complex characters against the Dirichlet series") {
  for (auto [p, j] : {std::pair{13ULL, 1ULL}, std::pair{13ULL, 5ULL}, std::pair{11ULL, 3ULL}}) {
    for (double s : {2.0, 3.0}) {
      auto l = l_value_derivs(chars::make_character(p, j), BallReal::from_double(s, 128), 0, 128);
      auto ref = l_series(p, j, s, 200000);
      CHECK(std::fabs(l[0].re.mid_double() - (double)ref.real()) < 1e-8);
      CHECK(std::fabs(l[0].im.mid_double() - (double)ref.imag()) < 1e-8);
    }
  }
}

TEST_CASE("shared table agrees with single-character evaluation") {
  const std::uint64_t p = 29;
  chars::CharacterTable table(p);
  std::vector<std::uint64_t> js{1, 3, 7, 27};
  BallReal s = BallReal::from_double(1.25, 128);
  auto many = l_value_derivs_many(table, js, s, 2, 128, Exec::parallel);
  for (std::size_t i = 0; i < js.size(); ++i) {
    auto one = l_value_derivs(chars::make_character(p, js[i]), s, 2, 128);
    for (unsigned k = 0; k <= 2; ++k) {
      CHECK(many[i][k].re.overlaps(one[k].re));
      CHECK(many[i][k].im.overlaps(one[k].im));
    }
  }
  std::vector<std::uint64_t> principal{0};
  CHECK_THROWS_AS(l_value_derivs_many(table, principal, s, 0, 128, Exec::serial), Unsupported);
}

TEST_CASE("log derivatives of an exponential") {
  // L(s) = 3 e^(2 s) at s = 0: L^(k) = 3 * 2^k, so (log L)' = 2 and higher vanish.
  std::vector<BallComplex> l;
  for (long k = 0; k < 4; ++k)
    l.push_back({BallReal(3L << k, 128), BallReal(0, 128)});
  auto g = log_derivs_from_l(l);
  Ref r;
  mpfr_log_ui(r, 3, MPFR_RNDN);
  CHECK(encloses(g[0].re, r));
  CHECK(g[1].re.contains(2));
  CHECK(g[2].re.contains_zero());
  CHECK(g[3].re.contains_zero());
  std::vector<BallComplex> zero{{BallReal(0, 64), BallReal(0, 64)}};
  CHECK_THROWS_AS(log_derivs_from_l(zero), CannotDivide);
}

TEST_CASE("f(1) equals the class number ratio") {
  for (std::uint64_t p : {5ULL, 7ULL, 23ULL}) {
    FValue f = f_at_one(p, 6.4355, 128);
    mpz_class h = classnumber::maillet_hminus(p);
    BallReal ratio = classnumber::kummer_log_ratio(p, h, 128);
    CHECK(f.value.overlaps(ratio));
    CHECK(f.value.rad_double() < 1e-25);
  }
  // log(4 pi^2 / 50) at p = 5.
  FValue f5 = f_at_one(5, 6.4355, 128);
  CHECK(std::fabs(f5.value.mid_double() + 0.2362688726094551) < 1e-15);
}

TEST_CASE("f derivatives agree with finite differences of f") {
  const std::uint64_t p = 101;
  SiegelZeroReport none = siegel_scan(p, 6.4355);
  REQUIRE_FALSE(none.present);
  const mpfr_prec_t prec = 192;
  BallReal sigma = BallReal::from_double(1.125, prec);
  auto fs = f_derivatives(p, 1, sigma, 6.4355, none, prec);
  BallReal h = mul_2si(BallReal(1, prec), -40);
  auto fp = f_derivatives(p, 0, sigma + h, 6.4355, none, prec);
  auto fm = f_derivatives(p, 0, sigma - h, 6.4355, none, prec);
  BallReal d = (fp[0].value - fm[0].value) / mul_2si(h, 1);
  CHECK(std::fabs((d - fs[1].value).mid_double()) < 1e-15);
}

TEST_CASE("sigma point lies just below 1 + k/(c log p)") {
  BallReal s = sigma_point(503, 6.4355, 1, 128);
  CHECK(s.is_exact());
  const double expect = 1.0 + 1.0 / (6.4355 * std::log(503.0));
  CHECK(std::fabs(s.mid_double() - expect) < 1e-14);
  BallReal upper = BallReal(1, 256) +
                   BallReal(1, 256) / (BallReal::from_double(6.4355, 256) * log_ui(503, 256));
  CHECK(certainly_le(s, upper));
}

TEST_CASE("orthogonality identity at sigma = 2") {
  for (std::uint64_t p : {3ULL, 7ULL}) {
    Eq2Residual r = eq2_residual(p, BallReal(2, 128), 1000000, 128);
    CHECK(r.residual.contains_zero());
    CHECK(r.residual.rad_double() < (p - 1) / 2.0 * 1e-6);
    CHECK(r.terms_plus > 0);
    CHECK(r.terms_minus > 0);
  }
  CHECK_THROWS_AS(eq2_residual(7, BallReal(1, 128), 1000000, 128), DomainError);
  CHECK_THROWS_AS(eq2_residual(7, BallReal(2, 128), 40, 128), DomainError);
}

TEST_CASE("Siegel scan verdicts") {
  SiegelZeroReport r13 = siegel_scan(13, 6.4355);
  CHECK_FALSE(r13.present);
  CHECK(r13.certified);
  CHECK(r13.method == SiegelMethod::parity);
  SiegelZeroReport r7 = siegel_scan(7, 6.4355);
  CHECK_FALSE(r7.present);
  CHECK(r7.certified);
  CHECK(r7.method == SiegelMethod::endpoint_positivity);
  REQUIRE(r7.l_at_left);
  CHECK(r7.l_at_left->is_positive());
  CHECK(to_string(SiegelMethod::endpoint_positivity) == "endpoint-positivity");
  CHECK_THROWS_AS(siegel_scan(7, 5.0), DomainError);
  CHECK_THROWS_AS(siegel_scan(15, 6.4355), InvalidInput);
}

TEST_CASE("bisection brackets a root") {
  auto sign = [](const BallReal& x) {
    BallReal v = x * x - 2L;
    if (v.is_negative()) return -1;
    if (v.is_positive()) return 1;
    throw Undetermined("ambiguous");
  };
  BallReal r = bisect_root(BallReal(1, 128), BallReal(2, 128), 60, sign);
  Ref s2;
  mpfr_sqrt_ui(s2, 2, MPFR_RNDN);
  CHECK(encloses(r, s2));
  CHECK(r.rad_double() < 1e-17);
}
