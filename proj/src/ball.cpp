#include "kummer/ball.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "kummer/error.hpp"

namespace kummer {

namespace {

constexpr mpfr_prec_t kBoundPrec = 64;

// 1 ulp of the rounded result when the operation was inexact.
Mag rounding_error(mpfr_srcptr r, int ternary) {
  if (ternary == 0) return Mag();
  if (mpfr_zero_p(r)) return Mag::pow2(mpfr_get_emin());
  return Mag::pow2(mpfr_get_exp(r) - mpfr_get_prec(r));
}

double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

// Small RAII scratch value for bound computations.
struct Tmp {
  mpfr_t v;
  explicit Tmp(mpfr_prec_t p = kBoundPrec) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
  operator mpfr_ptr() { return v; }
};

// Reusable per-thread scratch for the fused kernels.
struct Scratch {
  mpfr_t v;
  Scratch() { mpfr_init2(v, kBoundPrec); }
  ~Scratch() { mpfr_clear(v); }
  mpfr_ptr at(mpfr_prec_t p) {
    if (mpfr_get_prec(v) != p) mpfr_set_prec(v, p);
    return v;
  }
};
thread_local Scratch tl_scratch;

// Lower bound of |mid| - rad as a Mag (zero if not positive).
Mag abs_lower(const BallReal& a) {
  Tmp r, l;
  a.rad().get_mpfr(r);
  mpfr_abs(l, a.mid(), MPFR_RNDD);
  mpfr_sub(l, l, r, MPFR_RNDD);
  if (mpfr_sgn(l.v) <= 0) return Mag();
  return Mag::lower_from_mpfr(l);
}

void bound(mpfr_ptr out, const BallReal& a, bool upper_side, mpfr_rnd_t rnd) {
  Tmp r;
  a.rad().get_mpfr(r);
  if (upper_side)
    mpfr_add(out, a.mid(), r, rnd);
  else
    mpfr_sub(out, a.mid(), r, rnd);
}

mpfr_prec_t cmp_prec(const BallReal& a, const BallReal& b) {
  return std::max(a.prec(), b.prec()) + 64;
}

}  // namespace

// --- Mag -------------------------------------------------------------------

Mag Mag::inf() {
  Mag m;
  m.inf_ = true;
  return m;
}

Mag Mag::normalized_up(double v, long exp) {
  if (std::isinf(v) || std::isnan(v)) return inf();
  if (v == 0.0) return Mag();
  int e = 0;
  double m = std::frexp(v, &e);
  return Mag(m, exp + e);
}

Mag Mag::from_double(double d) {
  if (std::isnan(d) || std::isinf(d)) return inf();
  return normalized_up(std::fabs(d), 0);
}

Mag Mag::pow2(long e) { return Mag(0.5, e + 1); }

Mag Mag::from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Mag();
  if (!mpfr_number_p(x)) return inf();
  long e = 0;
  double d = std::fabs(mpfr_get_d_2exp(&e, x, MPFR_RNDA));
  return normalized_up(d, e);
}

Mag Mag::lower_from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Mag();
  if (!mpfr_number_p(x)) return inf();
  long e = 0;
  double d = std::fabs(mpfr_get_d_2exp(&e, x, MPFR_RNDZ));
  return normalized_up(d, e);
}

double Mag::to_double() const {
  if (inf_) return std::numeric_limits<double>::infinity();
  if (man_ == 0.0) return 0.0;
  if (exp_ > 1024) return std::numeric_limits<double>::infinity();
  if (exp_ < -1021) return std::numeric_limits<double>::min();
  return std::ldexp(man_, static_cast<int>(exp_));
}

void Mag::get_mpfr(mpfr_ptr out) const {
  if (inf_) {
    mpfr_set_inf(out, 1);
    return;
  }
  mpfr_set_d(out, man_, MPFR_RNDU);
  mpfr_mul_2si(out, out, exp_, MPFR_RNDU);
}

long Mag::log2_ceil() const {
  if (inf_) return LONG_MAX / 4;
  if (man_ == 0.0) return LONG_MIN / 4;
  return exp_;
}

Mag& Mag::operator+=(const Mag& o) {
  if (inf_ || o.inf_) return *this = inf();
  if (o.man_ == 0.0) return *this;
  if (man_ == 0.0) return *this = o;
  const Mag& hi = exp_ >= o.exp_ ? *this : o;
  const Mag& lo = exp_ >= o.exp_ ? o : *this;
  long d = hi.exp_ - lo.exp_;
  double v = d > 60 ? up(hi.man_) : up(hi.man_ + std::ldexp(lo.man_, static_cast<int>(-d)));
  return *this = normalized_up(v, hi.exp_);
}

Mag& Mag::operator*=(const Mag& o) {
  if (man_ == 0.0 && !inf_) return *this;
  if (o.man_ == 0.0 && !o.inf_) return *this = Mag();
  if (inf_ || o.inf_) return *this = inf();
  return *this = normalized_up(up(man_ * o.man_), exp_ + o.exp_);
}

Mag Mag::mul_2si(long e) const {
  if (inf_ || man_ == 0.0) return *this;
  return Mag(man_, exp_ + e);
}

Mag Mag::mul_ui(unsigned long k) const {
  if (inf_ || man_ == 0.0 || k == 0) return k == 0 && !inf_ ? Mag() : *this;
  return normalized_up(up(man_ * static_cast<double>(k)), exp_);
}

Mag Mag::div(const Mag& a, const Mag& b_lower) {
  if (a.is_zero()) return Mag();
  if (a.inf_ || b_lower.is_zero()) return inf();
  if (b_lower.inf_) return Mag();
  return normalized_up(up(a.man_ / b_lower.man_), a.exp_ - b_lower.exp_);
}

Mag Mag::expm1() const {
  if (inf_) return inf();
  if (man_ == 0.0) return Mag();
  if (exp_ > 10) return inf();
  if (exp_ < -30) return *this * from_double(1.0 + 0x1p-28);
  double x = to_double();
  return from_double(std::expm1(x) * (1.0 + 0x1p-40));
}

bool operator<=(const Mag& a, const Mag& b) {
  if (b.inf_) return true;
  if (a.inf_) return false;
  if (a.man_ == 0.0) return true;
  if (b.man_ == 0.0) return false;
  if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
  return a.man_ <= b.man_;
}

// --- BallReal: lifetime ----------------------------------------------------

BallReal::BallReal(mpfr_prec_t prec) {
  mpfr_init2(mid_, prec);
  mpfr_set_zero(mid_, 1);
}

BallReal::BallReal(long v, mpfr_prec_t prec) {
  mpfr_init2(mid_, prec);
  int t = mpfr_set_si(mid_, v, MPFR_RNDN);
  rad_ = rounding_error(mid_, t);
}

BallReal::BallReal(const BallReal& o) : rad_(o.rad_) {
  mpfr_init2(mid_, o.prec());
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
}

BallReal::BallReal(BallReal&& o) noexcept : rad_(o.rad_) {
  mpfr_init2(mid_, MPFR_PREC_MIN);
  mpfr_swap(mid_, o.mid_);
}

BallReal& BallReal::operator=(const BallReal& o) {
  if (this != &o) {
    if (prec() != o.prec()) mpfr_set_prec(mid_, o.prec());
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    rad_ = o.rad_;
  }
  return *this;
}

BallReal& BallReal::operator=(BallReal&& o) noexcept {
  mpfr_swap(mid_, o.mid_);
  std::swap(rad_, o.rad_);
  return *this;
}

BallReal::~BallReal() { mpfr_clear(mid_); }

BallReal BallReal::from_double(double d, mpfr_prec_t prec) {
  BallReal r(prec);
  int t = mpfr_set_d(r.mid_, d, MPFR_RNDN);
  r.rad_ = rounding_error(r.mid_, t);
  return r;
}

BallReal BallReal::from_string(std::string_view decimal, mpfr_prec_t prec) {
  BallReal r(prec);
  std::string s(decimal);
  char* end = nullptr;
  int t = mpfr_strtofr(r.mid_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw InvalidInput("not a decimal number: " + s);
  r.rad_ = rounding_error(r.mid_, t);
  return r;
}

BallReal BallReal::from_mpz(const mpz_class& z, mpfr_prec_t prec) {
  BallReal r(prec);
  int t = mpfr_set_z(r.mid_, z.get_mpz_t(), MPFR_RNDN);
  r.rad_ = rounding_error(r.mid_, t);
  return r;
}

BallReal BallReal::from_mpq(const mpq_class& q, mpfr_prec_t prec) {
  BallReal r(prec);
  int t = mpfr_set_q(r.mid_, q.get_mpq_t(), MPFR_RNDN);
  r.rad_ = rounding_error(r.mid_, t);
  return r;
}

BallReal BallReal::from_mid_rad(mpfr_srcptr mid, const Mag& rad) {
  BallReal r(mpfr_get_prec(mid));
  mpfr_set(r.mid_, mid, MPFR_RNDN);
  r.rad_ = rad;
  return r;
}

BallReal BallReal::from_interval(mpfr_srcptr lo, mpfr_srcptr hi) {
  mpfr_prec_t p = std::max(mpfr_get_prec(lo), mpfr_get_prec(hi));
  BallReal r(p);
  Tmp sum(p + 1);
  mpfr_add(sum, lo, hi, MPFR_RNDN);
  mpfr_div_2ui(sum, sum, 1, MPFR_RNDN);
  mpfr_set(r.mid_, sum.v, MPFR_RNDN);
  Tmp d1(kBoundPrec), d2(kBoundPrec);
  mpfr_sub(d1, hi, r.mid_, MPFR_RNDU);
  mpfr_sub(d2, r.mid_, lo, MPFR_RNDU);
  mpfr_max(d1, d1, d2, MPFR_RNDU);
  r.rad_ = Mag::from_mpfr(d1);
  return r;
}

BallReal BallReal::with_prec(mpfr_prec_t p) const {
  BallReal r(p);
  int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
  r.rad_ = rad_ + rounding_error(r.mid_, t);
  return r;
}

// --- BallReal: queries -----------------------------------------------------

double BallReal::mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }

void BallReal::lower(mpfr_ptr out) const { bound(out, *this, false, MPFR_RNDD); }
void BallReal::upper(mpfr_ptr out) const { bound(out, *this, true, MPFR_RNDU); }

double BallReal::lower_double() const {
  Tmp t(prec() + 64);
  lower(t);
  return mpfr_get_d(t, MPFR_RNDD);
}

double BallReal::upper_double() const {
  Tmp t(prec() + 64);
  upper(t);
  return mpfr_get_d(t, MPFR_RNDU);
}

bool BallReal::is_finite() const { return mpfr_number_p(mid_) && rad_.is_finite(); }

bool BallReal::contains_zero() const {
  if (!is_finite()) return true;
  Tmp r;
  rad_.get_mpfr(r);
  return mpfr_cmpabs(mid_, r) <= 0;
}

bool BallReal::is_positive() const {
  if (!is_finite() || mpfr_sgn(mid_) <= 0) return false;
  Tmp r;
  rad_.get_mpfr(r);
  return mpfr_cmpabs(mid_, r) > 0;
}

bool BallReal::is_negative() const {
  if (!is_finite() || mpfr_sgn(mid_) >= 0) return false;
  Tmp r;
  rad_.get_mpfr(r);
  return mpfr_cmpabs(mid_, r) > 0;
}

bool BallReal::contains(const BallReal& o) const {
  if (!is_finite()) return true;
  if (!o.is_finite()) return false;
  mpfr_prec_t p = cmp_prec(*this, o);
  Tmp lo(p), hi(p), olo(p), ohi(p);
  bound(lo, *this, false, MPFR_RNDU);
  bound(hi, *this, true, MPFR_RNDD);
  bound(olo, o, false, MPFR_RNDD);
  bound(ohi, o, true, MPFR_RNDU);
  return mpfr_lessequal_p(lo, olo) && mpfr_lessequal_p(ohi, hi);
}

bool BallReal::contains(long v) const {
  BallReal b(v, 64);
  return contains(b);
}

bool BallReal::overlaps(const BallReal& o) const {
  if (!is_finite() || !o.is_finite()) return true;
  mpfr_prec_t p = cmp_prec(*this, o);
  Tmp lo(p), hi(p), olo(p), ohi(p);
  bound(lo, *this, false, MPFR_RNDU);
  bound(hi, *this, true, MPFR_RNDD);
  bound(olo, o, false, MPFR_RNDU);
  bound(ohi, o, true, MPFR_RNDD);
  return mpfr_lessequal_p(lo, ohi) && mpfr_lessequal_p(olo, hi);
}

std::string BallReal::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, mid_);
  std::string s(buf);
  mpfr_free_str(buf);
  char rb[64];
  std::snprintf(rb, sizeof rb, " +/- %.3g", rad_.to_double());
  return s + rb;
}

// --- BallReal: fused kernels -----------------------------------------------

void BallReal::addmul(const BallReal& x, long c) {
  mpfr_ptr t = tl_scratch.at(prec());
  int t1 = mpfr_mul_si(t, x.mid_, c, MPFR_RNDN);
  Mag e1 = rounding_error(t, t1);
  int t2 = mpfr_add(mid_, mid_, t, MPFR_RNDN);
  rad_ += x.rad_.mul_ui(static_cast<unsigned long>(c < 0 ? -c : c));
  rad_ += e1;
  rad_ += rounding_error(mid_, t2);
}

void BallReal::addmul(const BallReal& x, const BallReal& y) {
  mpfr_ptr t = tl_scratch.at(prec());
  int t1 = mpfr_mul(t, x.mid_, y.mid_, MPFR_RNDN);
  Mag e1 = rounding_error(t, t1);
  int t2 = mpfr_add(mid_, mid_, t, MPFR_RNDN);
  rad_ += Mag::from_mpfr(x.mid_) * y.rad_ + Mag::from_mpfr(y.mid_) * x.rad_ + x.rad_ * y.rad_;
  rad_ += e1;
  rad_ += rounding_error(mid_, t2);
}

void BallReal::submul(const BallReal& x, const BallReal& y) {
  mpfr_ptr t = tl_scratch.at(prec());
  int t1 = mpfr_mul(t, x.mid_, y.mid_, MPFR_RNDN);
  Mag e1 = rounding_error(t, t1);
  int t2 = mpfr_sub(mid_, mid_, t, MPFR_RNDN);
  rad_ += Mag::from_mpfr(x.mid_) * y.rad_ + Mag::from_mpfr(y.mid_) * x.rad_ + x.rad_ * y.rad_;
  rad_ += e1;
  rad_ += rounding_error(mid_, t2);
}

BallReal& BallReal::operator+=(const BallReal& o) { return *this = *this + o; }
BallReal& BallReal::operator-=(const BallReal& o) { return *this = *this - o; }
BallReal& BallReal::operator*=(const BallReal& o) { return *this = *this * o; }
BallReal& BallReal::operator/=(const BallReal& o) { return *this = *this / o; }

// --- BallReal: arithmetic --------------------------------------------------

BallReal operator+(const BallReal& a, const BallReal& b) {
  BallReal r(std::max(a.prec(), b.prec()));
  int t = mpfr_add(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
  r.set_rad(a.rad() + b.rad() + rounding_error(r.mid(), t));
  return r;
}

BallReal operator-(const BallReal& a, const BallReal& b) {
  BallReal r(std::max(a.prec(), b.prec()));
  int t = mpfr_sub(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
  r.set_rad(a.rad() + b.rad() + rounding_error(r.mid(), t));
  return r;
}

BallReal operator*(const BallReal& a, const BallReal& b) {
  BallReal r(std::max(a.prec(), b.prec()));
  int t = mpfr_mul(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
  r.set_rad(Mag::from_mpfr(a.mid()) * b.rad() + Mag::from_mpfr(b.mid()) * a.rad() +
            a.rad() * b.rad() + rounding_error(r.mid(), t));
  return r;
}

BallReal operator/(const BallReal& a, const BallReal& b) {
  Mag bl = abs_lower(b);
  if (bl.is_zero()) throw CannotDivide("division by a ball containing zero");
  BallReal r(std::max(a.prec(), b.prec()));
  int t = mpfr_div(r.mid_mut(), a.mid(), b.mid(), MPFR_RNDN);
  Mag num = Mag::from_mpfr(a.mid()) * b.rad() + Mag::from_mpfr(b.mid()) * a.rad();
  // |b.mid| * (|b.mid| - b.rad), rounded down.
  Tmp d(kBoundPrec), l(kBoundPrec);
  mpfr_abs(d, b.mid(), MPFR_RNDD);
  bl.get_mpfr(l);
  mpfr_mul(d, d, l, MPFR_RNDD);
  r.set_rad(Mag::div(num, Mag::lower_from_mpfr(d)) + rounding_error(r.mid(), t));
  return r;
}

BallReal operator-(const BallReal& a) {
  BallReal r(a);
  mpfr_neg(r.mid_mut(), r.mid(), MPFR_RNDN);
  return r;
}

BallReal operator+(const BallReal& a, long b) { return a + BallReal(b, a.prec()); }
BallReal operator-(const BallReal& a, long b) { return a - BallReal(b, a.prec()); }
BallReal operator-(long a, const BallReal& b) { return BallReal(a, b.prec()) - b; }

BallReal operator*(const BallReal& a, long b) {
  BallReal r(a.prec());
  int t = mpfr_mul_si(r.mid_mut(), a.mid(), b, MPFR_RNDN);
  r.set_rad(a.rad().mul_ui(static_cast<unsigned long>(b < 0 ? -b : b)) +
            rounding_error(r.mid(), t));
  return r;
}

BallReal operator*(long a, const BallReal& b) { return b * a; }

BallReal operator/(const BallReal& a, long b) {
  if (b == 0) throw CannotDivide("division by zero");
  BallReal r(a.prec());
  int t = mpfr_div_si(r.mid_mut(), a.mid(), b, MPFR_RNDN);
  Mag bl = Mag::from_double(static_cast<double>(b < 0 ? -b : b) * (1.0 - 0x1p-52));
  r.set_rad(Mag::div(a.rad(), bl) + rounding_error(r.mid(), t));
  return r;
}

BallReal operator/(long a, const BallReal& b) { return BallReal(a, b.prec()) / b; }

BallReal mul_2si(const BallReal& a, long e) {
  BallReal r(a.prec());
  mpfr_mul_2si(r.mid_mut(), a.mid(), e, MPFR_RNDN);
  r.set_rad(a.rad().mul_2si(e));
  return r;
}

BallReal abs(const BallReal& a) {
  BallReal r(a);
  mpfr_abs(r.mid_mut(), r.mid(), MPFR_RNDN);
  return r;
}

BallReal sqr(const BallReal& a) {
  BallReal r(a.prec());
  int t = mpfr_sqr(r.mid_mut(), a.mid(), MPFR_RNDN);
  r.set_rad((Mag::from_mpfr(a.mid()) * a.rad()).mul_2si(1) + a.rad() * a.rad() +
            rounding_error(r.mid(), t));
  return r;
}

BallReal sqrt(const BallReal& a) {
  if (!a.is_finite()) throw PrecisionExhausted("sqrt of a non-finite ball");
  Mag lo = a.is_positive() ? abs_lower(a) : Mag();
  if (lo.is_zero()) {
    if (a.is_negative()) throw DomainError("sqrt of a negative ball");
    Tmp hi(a.prec() + 8), zero(a.prec() + 8);
    a.upper(hi);
    mpfr_sqrt(hi, hi, MPFR_RNDU);
    mpfr_set_zero(zero, 1);
    return BallReal::from_interval(zero, hi).with_prec(a.prec());
  }
  BallReal r(a.prec());
  int t = mpfr_sqrt(r.mid_mut(), a.mid(), MPFR_RNDN);
  Tmp l;
  lo.get_mpfr(l);
  mpfr_sqrt(l, l, MPFR_RNDD);
  r.set_rad(Mag::div(a.rad(), Mag::lower_from_mpfr(l)) + rounding_error(r.mid(), t));
  return r;
}

BallReal exp(const BallReal& a) {
  BallReal r(a.prec());
  int t = mpfr_exp(r.mid_mut(), a.mid(), MPFR_RNDN);
  Mag err = rounding_error(r.mid(), t);
  r.set_rad((Mag::from_mpfr(r.mid()) + err) * a.rad().expm1() + err);
  return r;
}

BallReal log(const BallReal& a) {
  if (!a.is_positive()) throw CannotDivide("log of a ball that is not certainly positive");
  BallReal r(a.prec());
  int t = mpfr_log(r.mid_mut(), a.mid(), MPFR_RNDN);
  r.set_rad(Mag::div(a.rad(), abs_lower(a)) + rounding_error(r.mid(), t));
  return r;
}

BallReal pow(const BallReal& base, const BallReal& e) { return exp(e * log(base)); }

BallReal pow_ui(const BallReal& base, unsigned long e) {
  BallReal result(1, base.prec());
  BallReal b(base);
  while (e != 0) {
    if (e & 1UL) result = result * b;
    e >>= 1;
    if (e != 0) b = sqr(b);
  }
  return result;
}

void sin_cos(BallReal& s, BallReal& c, const BallReal& a) {
  s = BallReal(a.prec());
  c = BallReal(a.prec());
  mpfr_sin_cos(s.mid_mut(), c.mid_mut(), a.mid(), MPFR_RNDN);
  // The ternary encoding of mpfr_sin_cos is combined; charge one ulp each.
  Mag es = rounding_error(s.mid(), 1);
  Mag ec = rounding_error(c.mid(), 1);
  s.set_rad(a.rad() + es);
  c.set_rad(a.rad() + ec);
}

BallReal atan2(const BallReal& y, const BallReal& x) {
  Tmp xl(kBoundPrec);
  x.lower(xl);
  if (mpfr_sgn(xl.v) <= 0 && y.contains_zero())
    throw CannotDivide("argument undefined: ball touches zero or the branch cut");
  Mag rsum = x.rad() + y.rad();
  Tmp d(kBoundPrec), r(kBoundPrec), t2(kBoundPrec);
  mpfr_abs(d, x.mid(), MPFR_RNDD);
  mpfr_abs(t2, y.mid(), MPFR_RNDD);
  mpfr_max(d, d, t2, MPFR_RNDD);
  rsum.get_mpfr(r);
  mpfr_sub(d, d, r, MPFR_RNDD);
  if (mpfr_sgn(d.v) <= 0) throw CannotDivide("argument of a ball too close to zero");
  BallReal out(std::max(x.prec(), y.prec()));
  int t = mpfr_atan2(out.mid_mut(), y.mid(), x.mid(), MPFR_RNDN);
  out.set_rad(Mag::div(rsum, Mag::lower_from_mpfr(d)) + rounding_error(out.mid(), t));
  return out;
}

BallReal const_pi(mpfr_prec_t prec) {
  BallReal r(prec);
  int t = mpfr_const_pi(r.mid_mut(), MPFR_RNDN);
  r.set_rad(rounding_error(r.mid(), t));
  return r;
}

BallReal const_euler_e(mpfr_prec_t prec) { return exp(BallReal(1, prec)); }

BallReal log_ui(unsigned long n, mpfr_prec_t prec) {
  BallReal r(prec);
  int t = mpfr_log_ui(r.mid_mut(), n, MPFR_RNDN);
  r.set_rad(rounding_error(r.mid(), t));
  return r;
}

BallReal hull(const BallReal& a, const BallReal& b) {
  mpfr_prec_t p = cmp_prec(a, b);
  Tmp alo(p), ahi(p), blo(p), bhi(p);
  a.lower(alo);
  a.upper(ahi);
  b.lower(blo);
  b.upper(bhi);
  mpfr_min(alo, alo, blo, MPFR_RNDD);
  mpfr_max(ahi, ahi, bhi, MPFR_RNDU);
  return BallReal::from_interval(alo, ahi).with_prec(std::max(a.prec(), b.prec()));
}

bool certainly_le(const BallReal& a, const BallReal& b) {
  if (!a.is_finite() || !b.is_finite()) return false;
  mpfr_prec_t p = cmp_prec(a, b);
  Tmp hi(p), lo(p);
  a.upper(hi);
  b.lower(lo);
  return mpfr_lessequal_p(hi, lo);
}

bool certainly_lt(const BallReal& a, const BallReal& b) {
  if (!a.is_finite() || !b.is_finite()) return false;
  mpfr_prec_t p = cmp_prec(a, b);
  Tmp hi(p), lo(p);
  a.upper(hi);
  b.lower(lo);
  return mpfr_less_p(hi, lo);
}

// --- BallComplex -----------------------------------------------------------

BallComplex::BallComplex(BallReal r) : re(std::move(r)), im(re.prec()) {}

std::string BallComplex::to_string(int digits) const {
  return "(" + re.to_string(digits) + ") + (" + im.to_string(digits) + ")i";
}

BallComplex& BallComplex::operator+=(const BallComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BallComplex& BallComplex::operator-=(const BallComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BallComplex& BallComplex::operator*=(const BallComplex& o) { return *this = *this * o; }

BallComplex operator+(const BallComplex& a, const BallComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

BallComplex operator-(const BallComplex& a, const BallComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

BallComplex operator*(const BallComplex& a, const BallComplex& b) {
  BallReal re = a.re * b.re;
  re.submul(a.im, b.im);
  BallReal im = a.re * b.im;
  im.addmul(a.im, b.re);
  return {std::move(re), std::move(im)};
}

BallComplex operator*(const BallComplex& a, const BallReal& b) { return {a.re * b, a.im * b}; }

BallComplex operator/(const BallComplex& a, const BallComplex& b) {
  BallReal d = abs2(b);
  BallComplex n = a * conj(b);
  return {n.re / d, n.im / d};
}

BallComplex operator/(const BallComplex& a, const BallReal& b) { return {a.re / b, a.im / b}; }

BallComplex operator-(const BallComplex& a) { return {-a.re, -a.im}; }

BallComplex conj(const BallComplex& a) { return {a.re, -a.im}; }

BallReal abs2(const BallComplex& a) { return sqr(a.re) + sqr(a.im); }

BallComplex log(const BallComplex& a) {
  BallReal m = abs2(a);
  if (!m.is_positive()) throw CannotDivide("log of a complex ball containing zero");
  BallReal re = mul_2si(log(m), -1);
  BallReal im = atan2(a.im, a.re);
  return {std::move(re), std::move(im)};
}

BallComplex root_of_unity(long num, long den, mpfr_prec_t prec) {
  if (den <= 0) throw InvalidInput("root_of_unity: denominator must be positive");
  long n = ((num % den) + den) % den;
  if (n == 0) return BallComplex(BallReal(1, prec));
  if (2 * n == den) return BallComplex(BallReal(-1, prec));
  if (4 * n == den) return {BallReal(prec), BallReal(1, prec)};
  if (4 * n == 3 * den) return {BallReal(prec), BallReal(-1, prec)};
  BallReal angle = mul_2si(const_pi(prec + 16) * n, 1) / den;
  BallComplex z(prec);
  sin_cos(z.im, z.re, angle);
  return {z.re.with_prec(prec), z.im.with_prec(prec)};
}

}  // namespace kummer
