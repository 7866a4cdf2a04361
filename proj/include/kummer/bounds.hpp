#pragma once

// The explicit bounds and constants, and sweeps that compare computed
// quantities against them.
//
// Iterated logarithms are natural: loglog p means log(log p). Every
// evaluator works in ball arithmetic; a comparison passes only when the upper
// end of the left side is at most the lower end of the right side.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kummer/ball.hpp"
#include "kummer/precision.hpp"

namespace kummer::bounds {

constexpr double kMinC = 6.4355;

// c_{p,nu}: the five-term constant in the derivative bound for f.
BallReal c_p_nu(std::uint64_t p, unsigned nu, const BallReal& sigma, double c,
                mpfr_prec_t prec = 128);

// nu = 0:  (1 + 1_beta) log(1/(sigma - 1)) + 3/2
// nu >= 1: (1 + 1_beta + c_{p,nu}) (nu - 1)! / (sigma - 1)^nu
// sigma must lie in (1, 1 + 1/(c log p)] (DomainError when certainly not).
BallReal lemma22_rhs(std::uint64_t p, unsigned nu, const BallReal& sigma, double c, int beta,
                     mpfr_prec_t prec = 128);

// 2 c^nu nu! p (log p)^(nu + 1), for c >= 6.4355 and (p - 1)/log p > c.
BallReal lemma23_rhs(std::uint64_t p, unsigned nu, double c, mpfr_prec_t prec = 128);

struct SigmaNu {
  BallReal minus_one{64};  // sigma_nu - 1
  BallReal lower{64};      // 1 / (c log p (2 nu p log p)^(1/nu))
};

// sigma_nu - 1 = (1/(c log p)) ((1 + 1_beta + c_{p,nu}) / (2 nu p log p))^(1/nu),
// with c_{p,nu} taken at sigma_for_c (default: 1 + 1/(c log p)).
SigmaNu sigma_nu(std::uint64_t p, unsigned nu, double c, int beta,
                 std::optional<BallReal> sigma_for_c = std::nullopt, mpfr_prec_t prec = 128);

// (1 + 2 1_beta + e^(1/c)) loglog p + (3 + e^(1/c)) log c + 0.791 e^(1/c)
//   + 10.720 + 0.943 / c,   for p > 500 and c >= 6.4355.
BallReal thm31_bound(std::uint64_t p, double c, int beta, mpfr_prec_t prec = 128);

// 6.4355 loglog p / loglog 500, for p >= 500.
BallReal default_c_ball(std::uint64_t p, mpfr_prec_t prec = 128);
// The same, rounded up to a double (any c >= the formula value is admissible).
double default_c(std::uint64_t p);

// ((p - 1)/4) log(4 pi^2 / 39).
BallReal cor33_rhs(std::uint64_t p, mpfr_prec_t prec = 128);

struct CrossoverPoint {
  std::uint64_t p = 0;
  BallReal lhs{64};
  BallReal rhs{64};
  bool pass = false;
};

struct CrossoverReport {
  std::uint64_t p_lo = 0;
  std::uint64_t p_hi = 0;
  std::vector<CrossoverPoint> points;
  std::optional<std::uint64_t> largest_failing;
  std::optional<std::uint64_t> first_permanent_pass;
};

// thm31_bound(p, default_c(p), 1) <= ((p - 1)/4) log(4 pi^2/39) over primes
// in [p_lo, p_hi] (p_lo > 500).
CrossoverReport cor33_crossover(std::uint64_t p_lo, std::uint64_t p_hi, mpfr_prec_t prec = 128);

enum class BoundId { lemma21, lemma22, lemma23, thm31, thm11, cor33_crossover, eq2_identity };
std::string to_string(BoundId id);
BoundId parse_bound_id(const std::string& s);  // accepts "eq2" and "cor33" too

struct BoundParams {
  std::optional<unsigned> nu;
  std::optional<BallReal> sigma;
  std::optional<double> c;
  std::optional<std::uint64_t> x;
  std::optional<int> residue;  // +1 / -1 for lemma21
  std::optional<int> beta;     // 1_beta
};

struct BoundReport {
  BoundId id = BoundId::lemma21;
  std::uint64_t p = 0;
  BoundParams params;
  BallReal lhs{64};
  BallReal rhs{64};
  bool pass = false;
  bool skipped = false;
  std::string notes;
};

struct VerifyConfig {
  PrecisionPolicy precision;
  // lemma21: x = k p for k in x_multiples, x = p^2 when include_p_squared,
  // and the absolute cutoffs; only x > p is used.
  std::vector<std::uint64_t> x_multiples{2, 10};
  bool include_p_squared = true;
  std::vector<std::uint64_t> x_absolute{10000000};
  std::vector<unsigned> nus{0, 1, 2, 3};
  // sigma = 1 + k/(c log p) for these k (lemma22 keeps k <= 1).
  std::vector<long> lemma22_steps{1};
  std::vector<long> lemma23_steps{1, 2};
  std::optional<double> c;  // lemma22/23 default 6.4355; thm31/thm11 default default_c(p)
  bool force_beta = false;  // evaluate right sides with 1_beta = 1
  long eq2_sigma = 2;
  std::uint64_t eq2_truncation = 10000000;
  std::uint64_t hminus_cap = 4001;
};

// One report per (p, grid point), ascending in p. Primes are handled in
// parallel; the merge order does not depend on completion order.
std::vector<BoundReport> verify(BoundId id, const std::vector<std::uint64_t>& primes,
                                const VerifyConfig& config = {});

}  // namespace kummer::bounds
