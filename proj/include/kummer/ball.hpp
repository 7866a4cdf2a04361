#pragma once

// Midpoint-radius ("ball") arithmetic on top of MPFR.
//
// A BallReal holds an MPFR midpoint and a Mag radius; the exact value it
// stands for is guaranteed to lie in [mid - rad, mid + rad]. Every operation
// rounds the midpoint to nearest and adds a bound for that rounding to the
// radius, so enclosures only ever grow.

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace kummer {

// Nonnegative upper bound stored as man * 2^exp with man in [0.5, 1).
// All arithmetic rounds toward +infinity. Exponents are 64-bit so radii far
// below the double range (2^-10000 and smaller) are representable.
class Mag {
 public:
  Mag() = default;

  static Mag inf();
  static Mag from_double(double d);   // >= |d|
  static Mag pow2(long e);
  static Mag from_mpfr(mpfr_srcptr x);        // >= |x|
  static Mag lower_from_mpfr(mpfr_srcptr x);  // <= |x|

  bool is_zero() const { return !inf_ && man_ == 0.0; }
  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }

  // Upper bound as a double; +inf on overflow, smallest subnormal on underflow.
  double to_double() const;
  // Writes the exact value into out (53 bits suffice).
  void get_mpfr(mpfr_ptr out) const;
  // log2 of the value rounded up, or a very negative number for zero.
  long log2_ceil() const;

  Mag& operator+=(const Mag& o);
  Mag& operator*=(const Mag& o);
  friend Mag operator+(Mag a, const Mag& b) { return a += b; }
  friend Mag operator*(Mag a, const Mag& b) { return a *= b; }
  Mag mul_2si(long e) const;
  Mag mul_ui(unsigned long k) const;

  // Upper bound of a / b where b is a lower bound of the divisor.
  static Mag div(const Mag& a, const Mag& b_lower);
  // Upper bound of exp(r) - 1.
  Mag expm1() const;

  friend bool operator<=(const Mag& a, const Mag& b);
  friend bool operator<(const Mag& a, const Mag& b) { return !(b <= a); }

 private:
  Mag(double man, long exp) : man_(man), exp_(exp) {}
  static Mag normalized_up(double v, long exp);

  double man_ = 0.0;
  long exp_ = 0;
  bool inf_ = false;
};

class BallReal {
 public:
  explicit BallReal(mpfr_prec_t prec = 128);
  BallReal(long v, mpfr_prec_t prec);
  BallReal(const BallReal& o);
  BallReal(BallReal&& o) noexcept;
  BallReal& operator=(const BallReal& o);
  BallReal& operator=(BallReal&& o) noexcept;
  ~BallReal();

  static BallReal from_double(double d, mpfr_prec_t prec);   // exact
  static BallReal from_string(std::string_view decimal, mpfr_prec_t prec);
  static BallReal from_mpz(const mpz_class& z, mpfr_prec_t prec);
  static BallReal from_mpq(const mpq_class& q, mpfr_prec_t prec);
  static BallReal from_mid_rad(mpfr_srcptr mid, const Mag& rad);
  // The ball [lo, hi]; lo <= hi required.
  static BallReal from_interval(mpfr_srcptr lo, mpfr_srcptr hi);

  mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
  mpfr_srcptr mid() const { return mid_; }
  mpfr_ptr mid_mut() { return mid_; }
  const Mag& rad() const { return rad_; }
  void set_rad(const Mag& r) { rad_ = r; }
  void add_error(const Mag& e) { rad_ += e; }

  BallReal with_prec(mpfr_prec_t prec) const;

  double mid_double() const;
  // Directed bounds written at the precision of `out`.
  void lower(mpfr_ptr out) const;
  void upper(mpfr_ptr out) const;
  double lower_double() const;
  double upper_double() const;

  bool is_finite() const;
  bool is_exact() const { return rad_.is_zero(); }
  bool contains_zero() const;
  bool is_positive() const;  // certainly > 0
  bool is_negative() const;  // certainly < 0
  bool contains(const BallReal& o) const;
  bool contains(long v) const;
  bool overlaps(const BallReal& o) const;
  // Upper bound of the radius as a double (may be 0 or +inf).
  double rad_double() const { return rad_.to_double(); }

  // "mid +/- rad" with `digits` significant decimal digits for the midpoint.
  std::string to_string(int digits = 20) const;

  // acc += x * c, allocation-free for the hot loops of the kernels.
  void addmul(const BallReal& x, long c);
  void addmul(const BallReal& x, const BallReal& y);
  void submul(const BallReal& x, const BallReal& y);

  BallReal& operator+=(const BallReal& o);
  BallReal& operator-=(const BallReal& o);
  BallReal& operator*=(const BallReal& o);
  BallReal& operator/=(const BallReal& o);

 private:
  mpfr_t mid_;
  Mag rad_;
};

BallReal operator+(const BallReal& a, const BallReal& b);
BallReal operator-(const BallReal& a, const BallReal& b);
BallReal operator*(const BallReal& a, const BallReal& b);
BallReal operator/(const BallReal& a, const BallReal& b);
BallReal operator-(const BallReal& a);
BallReal operator+(const BallReal& a, long b);
BallReal operator-(const BallReal& a, long b);
BallReal operator-(long a, const BallReal& b);
BallReal operator*(const BallReal& a, long b);
BallReal operator*(long a, const BallReal& b);
BallReal operator/(const BallReal& a, long b);
BallReal operator/(long a, const BallReal& b);

BallReal mul_2si(const BallReal& a, long e);
BallReal abs(const BallReal& a);
BallReal sqr(const BallReal& a);
BallReal sqrt(const BallReal& a);
BallReal exp(const BallReal& a);
BallReal log(const BallReal& a);
BallReal pow(const BallReal& base, const BallReal& e);
BallReal pow_ui(const BallReal& base, unsigned long e);
void sin_cos(BallReal& s, BallReal& c, const BallReal& a);
BallReal atan2(const BallReal& y, const BallReal& x);
BallReal const_pi(mpfr_prec_t prec);
BallReal const_euler_e(mpfr_prec_t prec);
BallReal log_ui(unsigned long n, mpfr_prec_t prec);
// Smallest ball containing both.
BallReal hull(const BallReal& a, const BallReal& b);

// upper(a) <= lower(b): a <= b holds for every pair of represented values.
bool certainly_le(const BallReal& a, const BallReal& b);
bool certainly_lt(const BallReal& a, const BallReal& b);

struct BallComplex {
  BallReal re;
  BallReal im;

  explicit BallComplex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  BallComplex(BallReal r, BallReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit BallComplex(BallReal r);

  mpfr_prec_t prec() const { return re.prec(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool overlaps(const BallComplex& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }
  std::string to_string(int digits = 20) const;

  BallComplex& operator+=(const BallComplex& o);
  BallComplex& operator-=(const BallComplex& o);
  BallComplex& operator*=(const BallComplex& o);
};

BallComplex operator+(const BallComplex& a, const BallComplex& b);
BallComplex operator-(const BallComplex& a, const BallComplex& b);
BallComplex operator*(const BallComplex& a, const BallComplex& b);
BallComplex operator*(const BallComplex& a, const BallReal& b);
BallComplex operator/(const BallComplex& a, const BallComplex& b);
BallComplex operator/(const BallComplex& a, const BallReal& b);
BallComplex operator-(const BallComplex& a);
BallComplex conj(const BallComplex& a);
BallReal abs2(const BallComplex& a);
// Principal logarithm. Throws CannotDivide when the ball touches 0 or
// straddles the branch cut on the negative real axis.
BallComplex log(const BallComplex& a);
// e^(2 pi i num/den).
BallComplex root_of_unity(long num, long den, mpfr_prec_t prec);

}  // namespace kummer
