#include "recur/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace recur {

namespace {

std::atomic<Bits> g_ceiling{0};

Bits read_ceiling_env() {
  const char* env = std::getenv("RECUR_COMMON_PRECISION_CEILING");
  if (env == nullptr) return kDefaultPrecisionCeiling;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v < 64) return kDefaultPrecisionCeiling;
  return v;
}

// Upper bound on the error of a correctly rounded result stored in `m`.
void add_rounding_error(Mpfr& rad, const Mpfr& m, int ternary) {
  if (ternary == 0) return;
  Mpfr err(kRadiusBits);
  if (m.is_zero()) {
    // Only possible on underflow, which the default exponent range excludes.
    mpfr_set_ui_2exp(err.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  } else {
    mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(m.get()) - m.prec(), MPFR_RNDU);
  }
  mpfr_add(rad.get(), rad.get(), err.get(), MPFR_RNDU);
}

Mpfr abs_up(const Mpfr& x) {
  Mpfr r(kRadiusBits);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

Mpfr abs_down(const Mpfr& x) {
  Mpfr r(kRadiusBits);
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}

BigRat to_rat(const Mpfr& x) {
  BigRat q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

}  // namespace

Bits precision_ceiling() {
  Bits v = g_ceiling.load();
  if (v == 0) {
    v = read_ceiling_env();
    g_ceiling.store(v);
  }
  return v;
}

void set_precision_ceiling(Bits bits) { g_ceiling.store(bits); }

// ---------------------------------------------------------------- Mpfr

Mpfr::Mpfr(Bits prec) {
  mpfr_init2(v_, std::max<Bits>(prec, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

Mpfr Mpfr::from_long(long v, Bits prec) {
  Mpfr r(prec);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

Mpfr Mpfr::from_string(const std::string& s, Bits prec, mpfr_rnd_t rnd) {
  Mpfr r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, rnd) != 0) {
    throw std::invalid_argument("not a decimal number: " + s);
  }
  return r;
}

std::string Mpfr::to_string(int digits, mpfr_rnd_t rnd) const {
  if (digits <= 0) {
    digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30102999566398120)) + 1;
  }
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDU ? "%.*RUe" : rnd == MPFR_RNDD ? "%.*RDe" : "%.*RNe";
  mpfr_asprintf(&buf, fmt, digits - 1, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

int cmp(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()); }

// ---------------------------------------------------------------- RealBall

RealBall::RealBall() : mid_(2), rad_(kRadiusBits) {}

RealBall::RealBall(long value, Bits prec) : mid_(prec), rad_(kRadiusBits) {
  int t = mpfr_set_si(mid_.get(), value, MPFR_RNDN);
  add_rounding_error(rad_, mid_, t);
}

RealBall::RealBall(const BigInt& value, Bits prec) : mid_(prec), rad_(kRadiusBits) {
  int t = mpfr_set_z(mid_.get(), value.get_mpz_t(), MPFR_RNDN);
  add_rounding_error(rad_, mid_, t);
}

RealBall::RealBall(const BigRat& value, Bits prec) : mid_(prec), rad_(kRadiusBits) {
  int t = mpfr_set_q(mid_.get(), value.get_mpq_t(), MPFR_RNDN);
  add_rounding_error(rad_, mid_, t);
}

RealBall RealBall::from_mid_rad(Mpfr mid, Mpfr rad) {
  RealBall b;
  b.mid_ = std::move(mid);
  Mpfr r(kRadiusBits);
  mpfr_abs(r.get(), rad.get(), MPFR_RNDU);
  b.rad_ = std::move(r);
  return b;
}

RealBall RealBall::from_interval(const Mpfr& lo, const Mpfr& hi, Bits prec) {
  RealBall b;
  b.mid_ = Mpfr(prec);
  mpfr_add(b.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
  Mpfr up(kRadiusBits), down(kRadiusBits);
  mpfr_sub(up.get(), hi.get(), b.mid_.get(), MPFR_RNDU);
  mpfr_sub(down.get(), b.mid_.get(), lo.get(), MPFR_RNDU);
  mpfr_max(b.rad_.get(), up.get(), down.get(), MPFR_RNDU);
  if (b.rad_.sign() < 0) mpfr_set_zero(b.rad_.get(), 1);
  return b;
}

RealBall RealBall::from_double(double value, Bits prec) {
  RealBall b;
  b.mid_ = Mpfr(std::max<Bits>(prec, 53));
  mpfr_set_d(b.mid_.get(), value, MPFR_RNDN);
  return b;
}

RealBall RealBall::pi(Bits prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return from_interval(lo, hi, prec);
}

RealBall RealBall::log2(Bits prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_const_log2(lo.get(), MPFR_RNDD);
  mpfr_const_log2(hi.get(), MPFR_RNDU);
  return from_interval(lo, hi, prec);
}

Mpfr RealBall::lower() const {
  Mpfr r(bits());
  mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return r;
}

Mpfr RealBall::upper() const {
  Mpfr r(bits());
  mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return r;
}

bool RealBall::contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

bool RealBall::contains(const BigRat& value) const {
  BigRat d = value - to_rat(mid_);
  return abs(d) <= to_rat(rad_);
}

bool RealBall::contains(const RealBall& other) const {
  BigRat m = to_rat(mid_), r = to_rat(rad_);
  BigRat om = to_rat(other.mid_), orad = to_rat(other.rad_);
  return om - orad >= m - r && om + orad <= m + r;
}

bool RealBall::overlaps(const RealBall& other) const {
  BigRat d = to_rat(mid_) - to_rat(other.mid_);
  return abs(d) <= to_rat(rad_) + to_rat(other.rad_);
}

bool RealBall::is_positive() const { return mpfr_cmp(mid_.get(), rad_.get()) > 0; }

bool RealBall::is_negative() const {
  return mid_.sign() < 0 && mpfr_cmpabs(mid_.get(), rad_.get()) > 0;
}

double RealBall::relative_radius() const {
  if (rad_.is_zero()) return 0.0;
  if (mid_.is_zero()) return std::numeric_limits<double>::infinity();
  Mpfr q(kRadiusBits);
  Mpfr a = abs_down(mid_);
  mpfr_div(q.get(), rad_.get(), a.get(), MPFR_RNDU);
  return q.to_double(MPFR_RNDU);
}

RealBall RealBall::with_bits(Bits prec) const {
  RealBall b;
  b.mid_ = Mpfr(prec);
  int t = mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN);
  b.rad_ = rad_;
  add_rounding_error(b.rad_, b.mid_, t);
  return b;
}

RealBall RealBall::operator-() const {
  RealBall b = *this;
  mpfr_neg(b.mid_.get(), b.mid_.get(), MPFR_RNDN);
  return b;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall r;
  r.mid_ = Mpfr(std::max(a.bits(), b.bits()));
  int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_rounding_error(r.rad_, r.mid_, t);
  return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall r;
  r.mid_ = Mpfr(std::max(a.bits(), b.bits()));
  int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  add_rounding_error(r.rad_, r.mid_, t);
  return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall r;
  r.mid_ = Mpfr(std::max(a.bits(), b.bits()));
  int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  Mpfr am = abs_up(a.mid_), bm = abs_up(b.mid_);
  Mpfr x(kRadiusBits), y(kRadiusBits), z(kRadiusBits);
  mpfr_mul(x.get(), am.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_mul(y.get(), bm.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_mul(z.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), x.get(), y.get(), MPFR_RNDU);
  mpfr_add(r.rad_.get(), r.rad_.get(), z.get(), MPFR_RNDU);
  add_rounding_error(r.rad_, r.mid_, t);
  return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  if (b.contains_zero()) throw std::domain_error("ball division by a ball containing zero");
  RealBall r;
  r.mid_ = Mpfr(std::max(a.bits(), b.bits()));
  int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
    Mpfr am = abs_up(a.mid_), bm_up = abs_up(b.mid_), bm_dn = abs_down(b.mid_);
    Mpfr num(kRadiusBits), x(kRadiusBits), den(kRadiusBits), low(kRadiusBits);
    mpfr_mul(num.get(), a.rad_.get(), bm_up.get(), MPFR_RNDU);
    mpfr_mul(x.get(), am.get(), b.rad_.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), x.get(), MPFR_RNDU);
    // |b| >= |mid_b| - rad_b > 0, rounded down.
    Mpfr bl(b.bits());
    mpfr_abs(bl.get(), b.mid_.get(), MPFR_RNDD);
    mpfr_sub(bl.get(), bl.get(), b.rad_.get(), MPFR_RNDD);
    mpfr_set(low.get(), bl.get(), MPFR_RNDD);
    mpfr_mul(den.get(), bm_dn.get(), low.get(), MPFR_RNDD);
    if (den.sign() <= 0) throw std::domain_error("ball division by a ball containing zero");
    mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  }
  add_rounding_error(r.rad_, r.mid_, t);
  return r;
}

RealBall operator*(const RealBall& a, long b) { return a * RealBall(b, std::max<Bits>(a.bits(), 64)); }
RealBall operator+(const RealBall& a, long b) { return a + RealBall(b, std::max<Bits>(a.bits(), 64)); }
RealBall operator-(const RealBall& a, long b) { return a - RealBall(b, std::max<Bits>(a.bits(), 64)); }
RealBall operator/(const RealBall& a, long b) { return a / RealBall(b, std::max<Bits>(a.bits(), 64)); }

RealBall abs(const RealBall& x) {
  if (!x.contains_zero()) return x.mid().sign() < 0 ? -x : x;
  Mpfr hi(kRadiusBits);
  mpfr_add(hi.get(), abs_up(x.mid()).get(), x.rad().get(), MPFR_RNDU);
  Mpfr lo(kRadiusBits);
  return RealBall::from_interval(lo, hi, x.bits());
}

RealBall sqr(const RealBall& x) {
  if (!x.contains_zero()) return x * x;
  Mpfr m(kRadiusBits);
  mpfr_add(m.get(), abs_up(x.mid()).get(), x.rad().get(), MPFR_RNDU);
  mpfr_sqr(m.get(), m.get(), MPFR_RNDU);
  Mpfr lo(kRadiusBits);
  return RealBall::from_interval(lo, m, x.bits());
}

RealBall sqrt(const RealBall& x) {
  Mpfr hi = x.upper();
  if (hi.sign() < 0) throw std::domain_error("sqrt of a negative ball");
  Mpfr lo = x.lower();
  if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
  Bits p = x.bits();
  Mpfr slo(p), shi(p);
  mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(shi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_interval(slo, shi, p);
}

RealBall log(const RealBall& x) {
  if (!x.is_positive()) throw std::domain_error("log of a ball not certainly positive");
  Bits p = x.bits();
  Mpfr lo = x.lower(), hi = x.upper();
  Mpfr llo(p), lhi(p);
  mpfr_log(llo.get(), lo.get(), MPFR_RNDD);
  mpfr_log(lhi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_interval(llo, lhi, p);
}

RealBall exp(const RealBall& x) {
  Bits p = x.bits();
  Mpfr lo = x.lower(), hi = x.upper();
  Mpfr elo(p), ehi(p);
  mpfr_exp(elo.get(), lo.get(), MPFR_RNDD);
  mpfr_exp(ehi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_interval(elo, ehi, p);
}

RealBall pow(const RealBall& x, long n) {
  if (n < 0) return RealBall(1, x.bits()) / pow(x, -n);
  RealBall result(1, x.bits());
  RealBall base = x;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1;
    if (n > 0) base = sqr(base);
  }
  return result;
}

RealBall pow(const RealBall& x, const RealBall& y) { return exp(y * log(x)); }

RealBall max(const RealBall& a, const RealBall& b) {
  Bits p = std::max(a.bits(), b.bits());
  Mpfr lo(p), hi(p);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_interval(lo, hi, p);
}

RealBall min(const RealBall& a, const RealBall& b) {
  Bits p = std::max(a.bits(), b.bits());
  Mpfr lo(p), hi(p);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_interval(lo, hi, p);
}

RealBall hull(const RealBall& a, const RealBall& b) {
  Bits p = std::max(a.bits(), b.bits());
  Mpfr lo(p), hi(p);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return RealBall::from_interval(lo, hi, p);
}

RealBall upper_ball(const RealBall& x) { return RealBall::from_mid_rad(x.upper(), Mpfr(kRadiusBits)); }
RealBall lower_ball(const RealBall& x) { return RealBall::from_mid_rad(x.lower(), Mpfr(kRadiusBits)); }

bool certainly_lt(const RealBall& a, const RealBall& b) { return (b - a).is_positive(); }
bool certainly_gt(const RealBall& a, const RealBall& b) { return (a - b).is_positive(); }
bool certainly_le(const RealBall& a, const RealBall& b) {
  RealBall d = b - a;
  return mpfr_cmp(d.mid().get(), d.rad().get()) >= 0;
}

// ---------------------------------------------------------------- ComplexBall

Bits ComplexBall::bits() const { return std::max(re_.bits(), im_.bits()); }

ComplexBall ComplexBall::mid_point() const {
  return {RealBall::from_mid_rad(re_.mid(), Mpfr(kRadiusBits)),
          RealBall::from_mid_rad(im_.mid(), Mpfr(kRadiusBits))};
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return {a.re_ + b.re_, a.im_ + b.im_};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return {a.re_ - b.re_, a.im_ - b.im_};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

ComplexBall operator*(const ComplexBall& a, const RealBall& b) { return {a.re_ * b, a.im_ * b}; }

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  RealBall n = norm(b);
  ComplexBall t = a * b.conj();
  return {t.re_ / n, t.im_ / n};
}

RealBall norm(const ComplexBall& z) { return sqr(z.re()) + sqr(z.im()); }

RealBall abs(const ComplexBall& z) {
  if (z.im().is_exact() && z.im().mid().is_zero()) return abs(z.re());
  return sqrt(norm(z));
}

ComplexBall pow(const ComplexBall& z, long n) {
  if (n < 0) return ComplexBall(RealBall(1, z.bits())) / pow(z, -n);
  ComplexBall result(RealBall(1, z.bits()));
  ComplexBall base = z;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string to_decimal(const Mpfr& x) { return x.to_string(0, MPFR_RNDN); }
std::string to_decimal_up(const Mpfr& x) { return x.to_string(20, MPFR_RNDU); }

}  // namespace recur
