#pragma once

// Template definitions for lfunc.hpp.

#include <algorithm>

namespace kummer::lfunc {

template <class SignFn>
BallReal bisect_root(const BallReal& lo_in, const BallReal& hi_in, long tol_bits, SignFn&& sign) {
  const mpfr_prec_t prec =
      std::max<mpfr_prec_t>(std::max(lo_in.prec(), hi_in.prec()), tol_bits + 64);
  BallReal lo = lo_in.with_prec(prec);
  BallReal hi = hi_in.with_prec(prec);
  if (!lo.is_exact() || !hi.is_exact()) throw DomainError("bisection endpoints must be exact");
  if (!certainly_lt(lo, hi)) throw DomainError("bisection needs lo < hi");
  const Mag tol = Mag::pow2(-tol_bits);
  for (;;) {
    BallReal width = hi - lo;
    if (Mag::from_mpfr(width.mid()) + width.rad() <= tol) break;
    BallReal mid = mul_2si(lo + hi, -1);
    if (!mid.is_exact()) throw InternalError("bisection midpoint not representable");
    if (sign(mid) < 0)
      lo = std::move(mid);
    else
      hi = std::move(mid);
  }
  return BallReal::from_interval(lo.mid(), hi.mid());
}

}  // namespace kummer::lfunc
