#pragma once

// Dirichlet L-functions modulo a prime p on the real axis, built from the
// regular part of the Hurwitz zeta function:
//
//   L(s, chi) = p^(-s) * sum_{a=1}^{p-1} chi(a) * zeta(s, a/p).
//
// The pole of zeta(s, a/p) cancels in the character sum, so L and its
// derivatives are available at s = 1 for non-principal chi.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kummer/ball.hpp"
#include "kummer/chars.hpp"
#include "kummer/exec.hpp"
#include "kummer/hurwitz.hpp"
#include "kummer/precision.hpp"

namespace kummer::lfunc {

using hurwitz::Series;
using ComplexSeries = std::vector<BallComplex>;

// Regular Hurwitz series zeta(s + t, g^k / p) - 1/(s + t - 1) for k = 0..p-2,
// i.e. indexed by discrete logarithm.
std::vector<Series> hurwitz_table(const chars::CharacterTable& table, const BallReal& s,
                                  unsigned K, mpfr_prec_t prec, Exec exec);

// out[j][i] = sum_k values[k][i] * roots[j * k], one entry per requested j.
// The per-j reduction runs over k in ascending order in both modes.
std::vector<ComplexSeries> character_sums(const std::vector<Series>& values,
                                          const chars::RootTable& roots,
                                          std::span<const std::uint64_t> js, Exec exec);

// [L^(k)(s, chi)] for k = 0..K. chi must be non-principal.
std::vector<BallComplex> l_value_derivs(const chars::Character& chi, const BallReal& s,
                                        unsigned K, mpfr_prec_t prec);

// Same for several characters of one modulus, sharing the Hurwitz table.
std::vector<std::vector<BallComplex>> l_value_derivs_many(const chars::CharacterTable& table,
                                                          std::span<const std::uint64_t> js,
                                                          const BallReal& s, unsigned K,
                                                          mpfr_prec_t prec, Exec exec);

// (log L)^(k) for k = 0..K from L^(0..K) by the triangular recurrence
// L^(n) = sum_{k<n} C(n-1, k) (log L)^(n-k) L^(k). Order 0 is the principal
// logarithm. Throws CannotDivide when L may vanish.
std::vector<BallComplex> log_derivs_from_l(const std::vector<BallComplex>& l);

std::vector<BallComplex> log_l_derivs(const chars::Character& chi, const BallReal& sigma,
                                      unsigned K, mpfr_prec_t prec);

enum class SiegelMethod { parity, endpoint_positivity, bisection };
std::string to_string(SiegelMethod m);

struct SiegelZeroReport {
  std::uint64_t p = 0;
  double c = 0.0;
  bool present = false;
  bool certified = false;
  std::optional<BallReal> beta;
  BallReal interval_lo{64};  // 1 - 1/(c log p)
  SiegelMethod method = SiegelMethod::parity;
  std::string assumption;
  std::optional<BallReal> l_at_left;  // L(1 - 1/(c log p), chi_quad)
  std::optional<BallReal> l_at_one;   // L(1, chi_quad)
  mpfr_prec_t precision_bits = 0;
};

struct FValue {
  std::uint64_t p = 0;
  unsigned nu = 0;
  double c = 0.0;
  BallReal sigma{64};
  BallReal value{64};
  SiegelZeroReport siegel;
};

// Exact point no larger than 1 + k/(c log p) and within one ulp of it.
BallReal sigma_point(std::uint64_t p, double c, long k, mpfr_prec_t prec);

// f^(nu)(sigma) for nu = 0..K, where
//   f(s) = sum_{chi odd} log L(s, chi) - 1_beta log(s - beta).
// No domain check on sigma beyond sigma > 0.75 and sigma > beta.
std::vector<FValue> f_derivatives(std::uint64_t p, unsigned K, const BallReal& sigma, double c,
                                  const SiegelZeroReport& siegel, mpfr_prec_t prec,
                                  Exec exec = Exec::parallel);

// One derivative; sigma must lie in (1, 1 + 2/(c log p)].
FValue f_derivative(std::uint64_t p, unsigned nu, const BallReal& sigma, double c,
                    const SiegelZeroReport& siegel, mpfr_prec_t prec);

FValue f_at_one(std::uint64_t p, double c, const SiegelZeroReport& siegel, mpfr_prec_t prec);
FValue f_at_one(std::uint64_t p, double c, mpfr_prec_t prec);

struct Eq2Residual {
  std::uint64_t p = 0;
  BallReal sigma{64};
  std::uint64_t truncation = 0;
  BallReal lhs{64};       // sum_{chi odd} Log L(sigma, chi)
  BallReal rhs{64};       // (p-1)/2 (sum_{+1} - sum_{-1}) truncated at X
  BallReal tail{64};      // bound on the neglected part of rhs
  BallReal residual{64};  // lhs - rhs, widened by tail
  std::size_t terms_plus = 0;
  std::size_t terms_minus = 0;
};

// Requires sigma >= 2 and X >= p^2.
Eq2Residual eq2_residual(std::uint64_t p, const BallReal& sigma, std::uint64_t truncation,
                         mpfr_prec_t prec);

// Root of a continuous function with f(lo) < 0 < f(hi) by bisection on exact
// midpoints until hi - lo < 2^-tol_bits; `sign` returns -1, +1, or throws
// Undetermined. Returns the final [lo, hi] as a ball.
template <class SignFn>
BallReal bisect_root(const BallReal& lo, const BallReal& hi, long tol_bits, SignFn&& sign);

// Locates or excludes a real zero of L(s, chi_quad) in ]1 - 1/(c log p), 1].
SiegelZeroReport siegel_scan(std::uint64_t p, double c, const PrecisionPolicy& policy = {});

}  // namespace kummer::lfunc

#include "kummer/lfunc_impl.hpp"
