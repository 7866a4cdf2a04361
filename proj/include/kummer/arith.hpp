#pragma once

// Primes, prime powers in the residue classes +1 and -1 modulo p, the
// weighted count Pi(x, p, a) and the Brun-Titchmarsh style upper bound
// 2x / ((p - 1) log(x / p)).

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "kummer/ball.hpp"
#include "kummer/exec.hpp"

namespace kummer::arith {

struct PrimePower {
  std::uint64_t q = 0;      // prime base
  unsigned m = 0;           // exponent, >= 1
  std::uint64_t value = 0;  // q^m

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Pi(x, p, a) = sum of 1/(m q^m) over prime powers q^m <= x with q^m = a (mod p).
struct PiSum {
  std::uint64_t p = 0;
  int a = 1;  // +1 or -1
  std::uint64_t x = 0;
  mpq_class value;
  std::size_t terms = 0;
};

// Primes in [2, limit], ascending. Uses the OpenMP segmented sieve.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// Plain sieve of Eratosthenes over one array; the serial reference for the
// segmented kernel.
std::vector<std::uint64_t> sieve_primes_simple(std::uint64_t limit);

// Segmented sieve; segments are sieved independently and concatenated in order.
std::vector<std::uint64_t> sieve_primes_segmented(std::uint64_t limit, Exec exec);

bool is_prime(std::uint64_t n);
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m);

// Smallest primitive root modulo an odd prime. Throws InvalidInput otherwise.
std::uint64_t primitive_root(std::uint64_t p);

// All prime powers q^m <= x with q^m = a (mod p), ascending by value.
std::vector<PrimePower> prime_powers_in_class(std::uint64_t p, int a, std::uint64_t x);

// Exact sum of 1/d over the given positive denominators, in lowest terms.
// Binary splitting keeps the cost near one big multiplication per level.
mpq_class sum_reciprocals(std::span<const std::uint64_t> denominators);

PiSum pi_sum(std::uint64_t p, int a, std::uint64_t x);

// 2x / ((p - 1) log(x / p)) as a ball. Requires x > p (DomainError otherwise).
BallReal bt_bound(std::uint64_t p, const BallReal& x, mpfr_prec_t prec = 128);
BallReal bt_bound(std::uint64_t p, std::uint64_t x, mpfr_prec_t prec = 128);

}  // namespace kummer::arith
