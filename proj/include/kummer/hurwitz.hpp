#pragma once

// Certified Hurwitz zeta values and s-derivatives via Euler-Maclaurin.
//
// Everything is carried as truncated Taylor series in t = s - s0, so the
// k-th derivative is k! times the k-th coefficient. The pole at s = 1 is
// split off analytically: the "regular" series is zeta(s, a) - 1/(s - 1),
// which is entire and is what character sums need (the pole cancels there).

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "kummer/ball.hpp"
#include "kummer/exec.hpp"

namespace kummer::hurwitz {

// Truncated power series in t; coefficient i multiplies t^i.
using Series = std::vector<BallReal>;

struct EulerMaclaurinParams {
  unsigned shift = 0;       // N: terms summed directly
  unsigned corrections = 0; // M: Bernoulli correction terms
  mpfr_prec_t guard_bits = 32;

  // N = max(32, ceil(0.35 prec)), M = ceil(0.2 prec).
  static EulerMaclaurinParams defaults(mpfr_prec_t prec);
};

// B_{2j} / (2j)! for j = 1..count as exact rationals (cached, thread-safe).
std::vector<mpq_class> bernoulli_over_factorial(unsigned count);

// B_{2j} / (2j)! rounded to balls at one precision (per-thread cache).
const std::vector<BallReal>& bernoulli_balls(unsigned count, mpfr_prec_t prec);

// Exact B_{2j} from tangent numbers, j = 1..count.
std::vector<mpq_class> bernoulli_even(unsigned count);

// Taylor coefficients of zeta(s0 + t, a) - 1/(s0 + t - 1), orders 0..K,
// for s0 > 0.75 and a in (0, 1]. `a` may carry a radius.
Series hurwitz_regular_series(const BallReal& s0, const BallReal& a, unsigned K,
                              mpfr_prec_t prec,
                              const EulerMaclaurinParams& params);
Series hurwitz_regular_series(const BallReal& s0, const BallReal& a, unsigned K,
                              mpfr_prec_t prec);

// Precision the series routines work at: prec plus guard bits plus the bits
// lost to cancellation against the pole part for s > 1.
mpfr_prec_t working_prec(const BallReal& s0, mpfr_prec_t prec, const EulerMaclaurinParams& params);

// The regular series without the head sum over k < N: the integral,
// boundary and Bernoulli terms plus the remainder radius. Result precision
// is working_prec(s0, prec, params).
// The anchor, when given, supplies log(N + a) and (N + a)^(-s0) so callers
// with many parameters can share the transcendental work.
struct TailAnchor {
  BallReal log_shift;
  BallReal pow_shift;
};
Series hurwitz_tail_series(const BallReal& s0, const BallReal& a, unsigned K, mpfr_prec_t prec,
                           const EulerMaclaurinParams& params,
                           const TailAnchor* anchor = nullptr);

// n^(-s) and log n for 1 <= n < limit. Transcendentals are evaluated only at
// primes (or skipped for a small exact integer s); composites are products
// along the smallest prime factor. Index 0 is unused. Logs are filled when
// requested and always when s is not a small integer.
struct PowerTable {
  std::uint64_t limit = 0;
  std::vector<BallReal> inv_pow;
  std::vector<BallReal> logs;  // empty unless requested
};
PowerTable power_table(const BallReal& s, std::uint64_t limit, bool with_logs, mpfr_prec_t prec,
                       Exec exec);

// [d^k/ds^k zeta(s, a)] for k = 0..K. Throws PoleError when s may equal 1,
// DomainError for s <= 0.75, a outside (0, 1], prec < 64.
std::vector<BallReal> hurwitz_zeta_derivs(const BallReal& s, const mpq_class& a, unsigned K,
                                          mpfr_prec_t prec);

// Multiply truncated series (length = min(|a|, |b|)).
Series series_mul(const Series& a, const Series& b);

// Coefficients c * (-L)^i / i!, i = 0..K: the series of c * e^(-t L).
Series exp_linear_series(const BallReal& c, const BallReal& L, unsigned K);

// Derivatives from Taylor coefficients: k! * c_k.
std::vector<BallReal> series_to_derivs(const Series& s);

}  // namespace kummer::hurwitz
