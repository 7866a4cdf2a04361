#pragma once

// Exact relative class numbers h_p^- of Q(zeta_p) by two independent routes:
//
//   analytic:  h^- = 2p * prod_{chi odd} (-B_{1,chi} / 2), certified by balls
//   maillet:   |det R(a b^-1 mod p)|_{1 <= a,b <= (p-1)/2} = p^((p-3)/2) h^-
//
// plus the elementary factor G(p) = 2p (p / 4 pi^2)^((p-1)/4) and the ratio
// log(h^- / G(p)).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kummer/ball.hpp"
#include "kummer/chars.hpp"
#include "kummer/exec.hpp"
#include "kummer/precision.hpp"

namespace kummer::classnumber {

enum class Method { analytic, maillet, both };
std::string to_string(Method m);
Method parse_method(const std::string& s);  // throws InvalidInput

constexpr std::uint64_t kAnalyticCap = 4001;

struct RelativeClassNumberRecord {
  std::uint64_t p = 0;
  mpz_class h_minus;
  BallReal log_G{64};
  BallReal log_ratio{64};
  Method method = Method::analytic;
  mpfr_prec_t precision_bits = 0;
  bool certified = false;
  // |Re(product) - h| at the final precision; absent for Maillet-only runs.
  std::optional<double> integrality_gap;
};

// B_{1,chi} = (1/p) sum_{a=1}^{p-1} a chi(a) by direct summation.
BallComplex b1_chi(const chars::Character& chi, mpfr_prec_t prec);

// p * B_{1,chi_j} for every odd j in ascending order, as the half-length DFT
//   sum_{k < (p-1)/2} (2 (g^k mod p) - p) w^(jk),   w = e^(2 pi i / (p-1)).
std::vector<BallComplex> scaled_b1_odd(const chars::CharacterTable& table, mpfr_prec_t prec,
                                       Exec exec);

// ceil((p/4) log_2 p) + 128 bits, doubling up to four times that.
PrecisionPolicy analytic_policy(std::uint64_t p);

struct AnalyticProduct {
  BallComplex value{64};
  mpfr_prec_t prec = 0;
};

// 2p * prod (-B_{1,chi}/2) at one precision, no certification.
AnalyticProduct analytic_product(std::uint64_t p, mpfr_prec_t prec, Exec exec = Exec::parallel);

// Certified exact h^-; throws PrecisionExhausted when the policy runs out
// and InvalidInput for p not an odd prime or above kAnalyticCap.
RelativeClassNumberRecord hminus_analytic(std::uint64_t p);
RelativeClassNumberRecord hminus_analytic(std::uint64_t p, const PrecisionPolicy& policy,
                                          Exec exec = Exec::parallel);

// Fraction-free (Bareiss) determinant of a square integer matrix given in
// row-major order. The row updates of each elimination step are
// independent; the parallel mode distributes them.
mpz_class bareiss_determinant(std::vector<mpz_class> m, std::size_t n, Exec exec);

// Maillet matrix entries R(a b^-1 mod p), row-major, a and b in 1..(p-1)/2.
std::vector<mpz_class> maillet_matrix(std::uint64_t p);
mpz_class maillet_determinant(std::uint64_t p, Exec exec = Exec::parallel);
mpz_class maillet_hminus(std::uint64_t p, Exec exec = Exec::parallel);

// log G(p) = log 2p + ((p-1)/4)(log p - log 4 pi^2).
BallReal g_factor_log(std::uint64_t p, mpfr_prec_t prec);

// log h - log G(p).
BallReal kummer_log_ratio(std::uint64_t p, const mpz_class& h, mpfr_prec_t prec);

// Record by the requested method. With `both`, the two integers must agree
// (InternalError otherwise).
RelativeClassNumberRecord compute(std::uint64_t p, Method method,
                                  std::optional<PrecisionPolicy> policy = std::nullopt,
                                  mpfr_prec_t report_prec = 128);

}  // namespace kummer::classnumber
