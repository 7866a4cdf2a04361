#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kummer/arith.hpp"
#include "kummer/chars.hpp"
#include "kummer/error.hpp"

using namespace kummer;
using namespace kummer::chars;

TEST_CASE("discrete log table inverts powers") {
  for (std::uint64_t p : {3ULL, 5ULL, 23ULL, 101ULL, 1009ULL}) {
    CharacterTable t(p);
    CHECK(t.g() == arith::primitive_root(p));
    for (std::uint64_t k = 0; k < p - 1; ++k) CHECK(t.dlog(t.power(k)) == k);
    for (std::uint64_t n = 1; n < p; ++n) CHECK(t.power(t.dlog(n)) == n);
  }
}

TEST_CASE("quadratic character matches Euler's criterion") {
  for (std::uint64_t p : arith::sieve_primes(400)) {
    if (p == 2) continue;
    const Character q = quadratic_character(p);
    CharacterTable t(p);
    for (std::int64_t n = -3; n < static_cast<std::int64_t>(2 * p); ++n) {
      const std::uint64_t r = static_cast<std::uint64_t>((n % std::int64_t(p) + p) % p);
      const std::uint64_t e = arith::powmod(r, (p - 1) / 2, p);
      const int euler = r == 0 ? 0 : (e == 1 ? 1 : -1);
      CHECK(legendre(n, p) == euler);
      CharacterValue v = character_value(q, t, n, 64);
      if (euler == 0) {
        CHECK_FALSE(v.exponent.has_value());
      } else {
        CHECK(v.value.re.contains(euler));
        CHECK(v.value.im.contains_zero());
      }
    }
    CHECK((q.parity == Parity::odd) == (p % 4 == 3));
  }
}

TEST_CASE("odd characters and parity") {
  for (std::uint64_t p : {5ULL, 7ULL, 29ULL}) {
    auto odd = odd_characters(p);
    CHECK(odd.size() == (p - 1) / 2);
    CharacterTable t(p);
    for (const auto& chi : odd) {
      CHECK(chi.parity == Parity::odd);
      CharacterValue v = character_value(chi, t, -1, 64);
      CHECK(v.value.re.contains(-1));
    }
  }
  CHECK(make_character(7, 0).is_principal());
  CHECK(make_character(7, 1).conjugate().j == 5);
  CHECK_THROWS(make_character(9, 1));
}

TEST_CASE("orthogonality of character values") {
  const std::uint64_t p = 13;
  CharacterTable t(p);
  for (std::uint64_t j = 0; j < p - 1; ++j) {
    BallComplex sum{BallReal(0, 128), BallReal(0, 128)};
    for (std::int64_t n = 1; n < static_cast<std::int64_t>(p); ++n)
      sum += character_value(make_character(p, j), t, n, 128).value;
    CHECK(sum.re.contains(j == 0 ? static_cast<long>(p - 1) : 0));
    CHECK(sum.im.contains_zero());
  }
}

TEST_CASE("root table values") {
  RootTable r(12, 128);
  CHECK(r[0].re.contains(1));
  CHECK(r[3].im.contains(1));
  CHECK(r[6].re.contains(-1));
  BallComplex w = r[1] * r[11];
  CHECK(w.re.contains(1));
  CHECK(w.im.contains_zero());
}
