#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kummer/bounds.hpp"
#include "kummer/error.hpp"

using namespace kummer;
using namespace kummer::bounds;

namespace {

double thm31_double(double p, double c, int beta) {
  const double ec = std::exp(1.0 / c);
  return (1 + 2 * beta + ec) * std::log(std::log(p)) + (3 + ec) * std::log(c) + 0.791 * ec +
         10.720 + 0.943 / c;
}

double tgamma_int(unsigned n) { return std::tgamma(static_cast<double>(n) + 1); }

double cpnu_double(double p, unsigned nu, double sigma, double c) {
  const double L = std::log(p);
  unsigned fl = 0;
  while (std::exp(fl + 1.0) <= nu) ++fl;
  const double cf = std::pow(c, nu) * tgamma_int(nu - 1);
  return std::log(2.0) / (2 * cf * L) + (std::log(L) + std::log(c) - std::log(std::log(2.0)) +
                                         std::exp(-1.0)) / cf +
         1 / (c * L) + sigma * fl / (nu - fl) + sigma * nu / (std::pow(c, fl) * tgamma_int(fl));
}

bool near(const BallReal& b, double expect, double rel = 1e-12) {
  return std::fabs(b.mid_double() - expect) <= rel * std::fabs(expect);
}

}  // namespace

TEST_CASE("closed-form right sides") {
  for (std::uint64_t p : {503ULL, 1009ULL, 9649ULL}) {
    for (double c : {6.4355, 7.5}) {
      CHECK(near(thm31_bound(p, c, 0), thm31_double(p, c, 0)));
      CHECK(near(thm31_bound(p, c, 1), thm31_double(p, c, 1)));
      for (unsigned nu = 0; nu <= 3; ++nu) {
        const double expect =
            2 * std::pow(c, nu) * tgamma_int(nu) * p * std::pow(std::log(double(p)), nu + 1);
        CHECK(near(lemma23_rhs(p, nu, c), expect));
      }
    }
  }
  CHECK(near(thm31_bound(503, 6.4355, 0), 23.5138, 1e-5));
  CHECK(near(cor33_rhs(1000), 999 / 4.0 * std::log(4 * M_PI * M_PI / 39)));
}

TEST_CASE("lemma22 right side") {
  const std::uint64_t p = 503;
  const double c = 6.4355;
  const double sig = 1 + 1 / (c * std::log(503.0)) - 1e-9;
  BallReal sigma = BallReal::from_double(sig, 128);
  CHECK(near(lemma22_rhs(p, 0, sigma, c, 0), std::log(1 / (sig - 1)) + 1.5, 1e-9));
  CHECK(near(lemma22_rhs(p, 0, sigma, c, 1), 2 * std::log(1 / (sig - 1)) + 1.5, 1e-9));
  for (unsigned nu = 1; nu <= 4; ++nu) {
    const double k = cpnu_double(p, nu, sig, c);
    CHECK(near(c_p_nu(p, nu, sigma, c), k, 1e-9));
    CHECK(near(lemma22_rhs(p, nu, sigma, c, 0), (k + 1) * tgamma_int(nu - 1) / std::pow(sig - 1, nu),
               1e-7));
  }
  CHECK_THROWS_AS(lemma22_rhs(p, 1, BallReal(2, 128), c, 0), DomainError);
  CHECK_THROWS_AS(lemma22_rhs(p, 1, BallReal(1, 128), c, 0), DomainError);
  CHECK_THROWS_AS(c_p_nu(p, 0, sigma, c), DomainError);
}

TEST_CASE("sigma_nu sits above its lower bound") {
  for (unsigned nu = 1; nu <= 3; ++nu) {
    SigmaNu s = sigma_nu(1009, nu, 6.4355, 0);
    CHECK(certainly_le(s.lower, s.minus_one));
    CHECK(s.minus_one.is_positive());
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(thm31_bound(499, 7.0, 0), DomainError);
  CHECK_THROWS_AS(thm31_bound(503, 6.0, 0), DomainError);
  CHECK_THROWS_AS(lemma23_rhs(503, 1, 6.0), DomainError);
  // (p - 1)/log p must exceed c.
  CHECK_THROWS_AS(lemma23_rhs(29, 1, 9.0), DomainError);
  CHECK_THROWS_AS(default_c_ball(499), DomainError);
}

TEST_CASE("default c") {
  CHECK(default_c(500) >= 6.4355);
  for (std::uint64_t p : {503ULL, 2003ULL, 9649ULL}) {
    const double expect = 6.4355 * std::log(std::log(double(p))) / std::log(std::log(500.0));
    CHECK(default_c(p) >= expect);
    CHECK(default_c(p) - expect < 1e-12);
  }
  CHECK(std::fabs(default_c(9649) - 7.80769) < 1e-5);
}

TEST_CASE("crossover") {
  CrossoverReport r = cor33_crossover(9001, 11000);
  REQUIRE(r.largest_failing);
  REQUIRE(r.first_permanent_pass);
  CHECK(*r.largest_failing == 9649);
  CHECK(*r.first_permanent_pass == 9661);
  // Independent double evaluation agrees on both sides of the crossover.
  for (std::uint64_t p : {9649ULL, 9661ULL}) {
    const double c = 6.4355 * std::log(std::log(double(p))) / std::log(std::log(500.0));
    const double lhs = thm31_double(p, c, 1);
    const double rhs = (p - 1) / 4.0 * std::log(4 * M_PI * M_PI / 39);
    CHECK((lhs <= rhs) == (p == 9661));
  }
}

TEST_CASE("verify sweeps") {
  VerifyConfig cfg;
  auto l21 = verify(BoundId::lemma21, {503, 509}, cfg);
  // x in {2p, 10p, p^2, 10^7}, both classes.
  CHECK(l21.size() == 16);
  for (const auto& r : l21) {
    CHECK(r.pass);
    CHECK_FALSE(r.skipped);
  }
  auto small = verify(BoundId::lemma21, {7}, cfg);
  REQUIRE(small.size() == 1);
  CHECK(small[0].skipped);

  auto t = verify(BoundId::thm31, {509, 503}, cfg);
  REQUIRE(t.size() == 2);
  CHECK(t[0].p == 503);
  CHECK(t[0].pass);
  CHECK(t[1].pass);

  auto e = verify(BoundId::eq2_identity, {7}, cfg);
  REQUIRE(e.size() == 1);
  CHECK(e[0].pass);
  CHECK(e[0].lhs.contains_zero());

  CHECK_THROWS_AS(verify(BoundId::lemma21, {9}, cfg), InvalidInput);
  CHECK(parse_bound_id("eq2") == BoundId::eq2_identity);
  CHECK(parse_bound_id("cor33") == BoundId::cor33_crossover);
  CHECK(to_string(BoundId::thm11) == "thm11");
  CHECK_THROWS_AS(parse_bound_id("lemma99"), InvalidInput);
}

TEST_CASE("worked values") {
  const double c = 6.4355;
  BallReal s = BallReal::from_string("1.02498", 128);
  CHECK(near(c_p_nu(503, 1, s, c), 1.746, 1e-3));
  CHECK(near(c_p_nu(503, 8, s, c), 0.466, 2e-3));
  CHECK(near(lemma23_rhs(503, 0, c), 6258, 1e-3));
  CHECK(near(lemma23_rhs(503, 1, c), 2.505e5, 1e-3));
  BallReal sig = BallReal(1, 128) + BallReal(1, 128) / (BallReal::from_double(c, 128) * log_ui(503, 128));
  CHECK(near(lemma22_rhs(503, 0, sig, c, 0), 5.190, 1e-3));
  CHECK(near(sigma_nu(503, 8, c, 0, s).minus_one, 0.00677, 2e-3));
}
