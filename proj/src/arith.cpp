#include "kummer/arith.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "kummer/error.hpp"

namespace kummer::arith {

namespace {

constexpr std::uint64_t kSegmentSize = 1u << 18;
constexpr std::uint64_t kMaxTableLimit = 1ULL << 32;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Primes in [lo, hi) given all primes up to sqrt(hi).
std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                         const std::vector<std::uint64_t>& small) {
  std::vector<std::uint8_t> composite(hi - lo, 0);
  for (std::uint64_t q : small) {
    if (q * q >= hi) break;
    std::uint64_t start = std::max(q * q, (lo + q - 1) / q * q);
    for (std::uint64_t n = start; n < hi; n += q) composite[n - lo] = 1;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
    if (!composite[n - lo]) out.push_back(n);
  return out;
}

// Odd-only primality bitmap shared by the prime-power enumerations.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit) : limit_(limit), odd_prime_(limit / 2 + 1, false) {
    for (std::uint64_t q : sieve_primes(limit))
      if (q != 2) odd_prime_[q / 2] = true;
  }
  std::uint64_t limit() const { return limit_; }
  bool is_prime(std::uint64_t n) const {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    return odd_prime_[n / 2];
  }

 private:
  std::uint64_t limit_;
  std::vector<bool> odd_prime_;
};

std::shared_ptr<const PrimeTable> prime_table(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < limit) {
    std::uint64_t target = std::max<std::uint64_t>(limit, table ? 2 * table->limit() : 1u << 16);
    table = std::make_shared<PrimeTable>(std::min(target, kMaxTableLimit));
  }
  return table;
}

void split_sum(std::span<const std::uint64_t> d, mpz_class& num, mpz_class& den) {
  if (d.size() == 1) {
    num = 1;
    den = static_cast<unsigned long>(d[0]);
    return;
  }
  std::size_t half = d.size() / 2;
  mpz_class n1, d1, n2, d2;
  split_sum(d.first(half), n1, d1);
  split_sum(d.subspan(half), n2, d2);
  num = n1 * d2 + n2 * d1;
  den = d1 * d2;
}

}  // namespace

std::vector<std::uint64_t> sieve_primes_simple(std::uint64_t limit) {
  if (limit < 2) return {};
  std::vector<std::uint8_t> composite(limit + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (composite[n]) continue;
    out.push_back(n);
    for (std::uint64_t m = n * n; m <= limit; m += n) composite[m] = 1;
  }
  return out;
}

std::vector<std::uint64_t> sieve_primes_segmented(std::uint64_t limit, Exec exec) {
  if (limit < 2) return {};
  const std::vector<std::uint64_t> small = sieve_primes_simple(isqrt(limit));
  const std::uint64_t end = limit + 1;
  const std::uint64_t segments = (end + kSegmentSize - 1) / kSegmentSize;
  std::vector<std::vector<std::uint64_t>> parts(segments);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::uint64_t s = 0; s < segments; ++s)
      parts[s] = sieve_segment(s * kSegmentSize, std::min(end, (s + 1) * kSegmentSize), small);
  } else {
    for (std::uint64_t s = 0; s < segments; ++s)
      parts[s] = sieve_segment(s * kSegmentSize, std::min(end, (s + 1) * kSegmentSize), small);
  }
  std::vector<std::uint64_t> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  return sieve_primes_segmented(limit, Exec::parallel);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw InvalidInput("primitive_root: not an odd prime: " + std::to_string(p));
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool generator = std::all_of(factors.begin(), factors.end(),
                                 [&](std::uint64_t q) { return powmod(g, (p - 1) / q, p) != 1; });
    if (generator) return g;
  }
  throw InternalError("no primitive root found");
}

std::vector<PrimePower> prime_powers_in_class(std::uint64_t p, int a, std::uint64_t x) {
  if (p < 3 || !is_prime(p)) throw InvalidInput("modulus must be an odd prime");
  if (a != 1 && a != -1) throw InvalidInput("residue class must be +1 or -1");
  if (x > kMaxTableLimit) throw InvalidInput("cutoff too large for prime-power enumeration");
  std::vector<PrimePower> out;
  if (x < 2) return out;
  auto table = prime_table(x);
  const std::uint64_t r = a == 1 ? 1 : p - 1;

  for (std::uint64_t n = r; n <= x; n += p)
    if (table->is_prime(n)) out.push_back({n, 1, n});

  for (std::uint64_t q = 2; q * q <= x; ++q) {
    if (!table->is_prime(q)) continue;
    std::uint64_t v = q * q;
    for (unsigned m = 2;; ++m) {
      if (v % p == r) out.push_back({q, m, v});
      if (v > x / q) break;
      v *= q;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& l, const PrimePower& rr) { return l.value < rr.value; });
  return out;
}

mpq_class sum_reciprocals(std::span<const std::uint64_t> denominators) {
  if (denominators.empty()) return 0;
  mpz_class num, den;
  split_sum(denominators, num, den);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

PiSum pi_sum(std::uint64_t p, int a, std::uint64_t x) {
  std::vector<PrimePower> powers = prime_powers_in_class(p, a, x);
  std::vector<std::uint64_t> den;
  den.reserve(powers.size());
  for (const PrimePower& pp : powers) den.push_back(pp.m * pp.value);
  PiSum s;
  s.p = p;
  s.a = a;
  s.x = x;
  s.value = sum_reciprocals(den);
  s.terms = powers.size();
  return s;
}

BallReal bt_bound(std::uint64_t p, const BallReal& x, mpfr_prec_t prec) {
  BallReal pb(static_cast<long>(p), prec);
  if (!certainly_lt(pb, x))
    throw DomainError("Brun-Titchmarsh bound needs x > p (diverges as x -> p)");
  BallReal denom = log(x / pb) * static_cast<long>(p - 1);
  return mul_2si(x, 1) / denom;
}

BallReal bt_bound(std::uint64_t p, std::uint64_t x, mpfr_prec_t prec) {
  return bt_bound(p, BallReal::from_mpz(mpz_class(static_cast<unsigned long>(x)), prec), prec);
}

}  // namespace kummer::arith
