#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kummer/ball.hpp"
#include "kummer/error.hpp"
#include "support.hpp"

using namespace kummer;
using testsupport::encloses;

namespace {

// 2000-bit reference value.
struct Ref {
  mpfr_t v;
  Ref() { mpfr_init2(v, 2000); }
  ~Ref() { mpfr_clear(v); }
  operator mpfr_ptr() { return v; }
};

}  // namespace

TEST_CASE("mag rounds upward and compares") {
  Mag a = Mag::from_double(0.1);
  CHECK(a.to_double() >= 0.1);
  Mag b = a + a;
  CHECK(b.to_double() >= 0.2);
  CHECK(Mag::pow2(-3).to_double() == 0.125);
  CHECK(Mag::pow2(-3) <= Mag::pow2(-2));
  CHECK_FALSE(Mag::pow2(-2) <= Mag::pow2(-3));
  // Far below the double range still orders correctly.
  CHECK(Mag::pow2(-50000) < Mag::pow2(-40000));
  CHECK(Mag::pow2(-50000).log2_ceil() <= -49999);
  CHECK(Mag::inf().is_inf());
}

TEST_CASE("field operations enclose the exact result") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    const double x = dist(rng), y = dist(rng);
    if (std::fabs(y) < 1e-3) continue;
    BallReal a = BallReal::from_double(x, 53) / BallReal(3, 53);
    BallReal b = BallReal::from_double(y, 53) / BallReal(7, 53);
    Ref ra, rb, r;
    mpfr_set_d(ra, x, MPFR_RNDN);
    mpfr_div_ui(ra, ra, 3, MPFR_RNDN);
    mpfr_set_d(rb, y, MPFR_RNDN);
    mpfr_div_ui(rb, rb, 7, MPFR_RNDN);
    CHECK(encloses(a, ra));
    mpfr_add(r, ra, rb, MPFR_RNDN);
    CHECK(encloses(a + b, r));
    mpfr_sub(r, ra, rb, MPFR_RNDN);
    CHECK(encloses(a - b, r));
    mpfr_mul(r, ra, rb, MPFR_RNDN);
    CHECK(encloses(a * b, r));
    mpfr_div(r, ra, rb, MPFR_RNDN);
    CHECK(encloses(a / b, r));
  }
}

TEST_CASE("elementary functions enclose high-precision references") {
  for (long n : {2L, 3L, 10L, 12345L}) {
    BallReal x = BallReal(n, 100) / BallReal(7, 100);
    Ref rx, r;
    mpfr_set_si(rx, n, MPFR_RNDN);
    mpfr_div_ui(rx, rx, 7, MPFR_RNDN);
    mpfr_exp(r, rx, MPFR_RNDN);
    CHECK(encloses(exp(x), r));
    mpfr_log(r, rx, MPFR_RNDN);
    CHECK(encloses(log(x), r));
    mpfr_sqrt(r, rx, MPFR_RNDN);
    CHECK(encloses(sqrt(x), r));
    mpfr_pow_ui(r, rx, 5, MPFR_RNDN);
    CHECK(encloses(pow_ui(x, 5), r));
    mpfr_log_ui(r, static_cast<unsigned long>(n), MPFR_RNDN);
    CHECK(encloses(log_ui(static_cast<unsigned long>(n), 100), r));
  }
  Ref pi;
  mpfr_const_pi(pi, MPFR_RNDN);
  CHECK(encloses(const_pi(200), pi));
  BallReal s(64), c(64);
  sin_cos(s, c, const_pi(128) / 6L);
  CHECK(s.contains(BallReal(1, 64) / 2L));
}

TEST_CASE("a ball with radius propagates it") {
  BallReal x(1, 128);
  x.add_error(Mag::pow2(-20));
  BallReal y = x * x;
  CHECK(y.contains(BallReal(1, 128)));
  CHECK(y.rad_double() >= 2.0 * std::ldexp(1.0, -20));
  BallReal l = log(x);
  CHECK(l.contains_zero());
  CHECK(l.rad_double() >= std::ldexp(1.0, -20));
}

TEST_CASE("comparisons are certain or undecided") {
  BallReal a = BallReal::from_string("0.1", 128);
  BallReal b = BallReal::from_string("0.2", 128);
  CHECK(certainly_lt(a, b));
  CHECK(certainly_le(a, b));
  CHECK_FALSE(certainly_lt(b, a));
  BallReal fuzzy = a;
  fuzzy.add_error(Mag::from_double(0.5));
  CHECK_FALSE(certainly_lt(fuzzy, b));
  CHECK_FALSE(certainly_lt(b, fuzzy));
  CHECK(fuzzy.overlaps(b));
  CHECK(hull(a, b).contains(BallReal::from_string("0.15", 128)));
}

TEST_CASE("division by a ball containing zero is refused") {
  BallReal z(0, 64);
  z.add_error(Mag::pow2(-10));
  CHECK_THROWS_AS(BallReal(1, 64) / z, CannotDivide);
  CHECK_THROWS_AS(log(z), CannotDivide);
}

TEST_CASE("exact conversions") {
  mpz_class big("123456789012345678901234567890");
  BallReal b = BallReal::from_mpz(big, 200);
  CHECK(b.is_exact());
  mpq_class q(1, 3);
  BallReal t = BallReal::from_mpq(q, 64);
  CHECK_FALSE(t.is_exact());
  CHECK((t * 3L).contains(1));
  CHECK_THROWS_AS(BallReal::from_string("1.5x", 64), InvalidInput);
}

TEST_CASE("complex logarithm and roots of unity") {
  BallComplex w = root_of_unity(1, 4, 128);
  CHECK(w.re.contains_zero());
  CHECK(w.im.contains(1));
  BallComplex l = log(BallComplex{BallReal(0, 128), BallReal(2, 128)});
  Ref half_pi, l2;
  mpfr_const_pi(half_pi, MPFR_RNDN);
  mpfr_div_2ui(half_pi, half_pi, 1, MPFR_RNDN);
  mpfr_const_log2(l2, MPFR_RNDN);
  CHECK(encloses(l.im, half_pi));
  CHECK(encloses(l.re, l2));
  // The principal branch is undefined on the cut.
  CHECK_THROWS_AS(log(BallComplex{BallReal(-1, 128), BallReal(0, 128)}), CannotDivide);
  BallComplex z{BallReal(3, 128), BallReal(4, 128)};
  CHECK(abs2(z).contains(25));
}
