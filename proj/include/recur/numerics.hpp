#pragma once

// Exact integers/rationals (GMP) and midpoint-radius ball arithmetic (MPFR).
//
// A RealBall [m +/- r] always contains the exact value it stands for. The
// midpoint carries the working precision; the radius is a 64-bit MPFR number
// that is only ever rounded upward.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace recur {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Working precision of a ball midpoint, in bits.
using Bits = long;

inline constexpr Bits kDefaultPrecision = 256;
inline constexpr Bits kDefaultPrecisionCeiling = 16384;
inline constexpr Bits kRadiusBits = 64;

/// Ceiling for every refinement loop. Reads RECUR_COMMON_PRECISION_CEILING
/// on first use; set_precision_ceiling overrides it.
Bits precision_ceiling();
void set_precision_ceiling(Bits bits);

/// RAII owner of an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(Bits prec = kRadiusBits);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  static Mpfr from_long(long v, Bits prec = kRadiusBits);
  static Mpfr from_string(const std::string& s, Bits prec, mpfr_rnd_t rnd = MPFR_RNDN);

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Bits prec() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Scientific decimal string with `digits` significant digits (0 = enough
  /// to round-trip the precision).
  std::string to_string(int digits = 0, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t v_;
};

int cmp(const Mpfr& a, const Mpfr& b);

class RealBall {
 public:
  /// Exact zero.
  RealBall();
  RealBall(long value, Bits prec);
  RealBall(const BigInt& value, Bits prec);
  RealBall(const BigRat& value, Bits prec);

  static RealBall from_mid_rad(Mpfr mid, Mpfr rad);
  /// Smallest representable ball containing [lo, hi].
  static RealBall from_interval(const Mpfr& lo, const Mpfr& hi, Bits prec);
  static RealBall from_double(double value, Bits prec);
  static RealBall pi(Bits prec);
  static RealBall log2(Bits prec);

  const Mpfr& mid() const { return mid_; }
  const Mpfr& rad() const { return rad_; }
  Bits bits() const { return mid_.prec(); }

  /// Endpoints, rounded outward.
  Mpfr lower() const;
  Mpfr upper() const;
  double mid_double() const { return mid_.to_double(); }
  double upper_double() const { return upper().to_double(MPFR_RNDU); }
  double lower_double() const { return lower().to_double(MPFR_RNDD); }

  bool is_exact() const { return rad_.is_zero(); }
  bool contains_zero() const;
  bool contains(const BigRat& value) const;
  bool contains(const RealBall& other) const;
  bool overlaps(const RealBall& other) const;
  /// Certainly > 0 / certainly < 0.
  bool is_positive() const;
  bool is_negative() const;

  /// Relative radius rad/|mid| rounded up (infinite when mid is zero and rad is not).
  double relative_radius() const;

  /// Same value with a different midpoint precision.
  RealBall with_bits(Bits prec) const;

  RealBall operator-() const;
  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  friend RealBall operator/(const RealBall& a, const RealBall& b);
  RealBall& operator+=(const RealBall& b) { return *this = *this + b; }
  RealBall& operator-=(const RealBall& b) { return *this = *this - b; }
  RealBall& operator*=(const RealBall& b) { return *this = *this * b; }
  RealBall& operator/=(const RealBall& b) { return *this = *this / b; }

 private:
  Mpfr mid_;
  Mpfr rad_;
};

RealBall operator*(const RealBall& a, long b);
RealBall operator+(const RealBall& a, long b);
RealBall operator-(const RealBall& a, long b);
RealBall operator/(const RealBall& a, long b);

RealBall abs(const RealBall& x);
RealBall sqr(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall log(const RealBall& x);
RealBall exp(const RealBall& x);
RealBall pow(const RealBall& x, long n);
/// x^y for x > 0.
RealBall pow(const RealBall& x, const RealBall& y);
RealBall max(const RealBall& a, const RealBall& b);
RealBall min(const RealBall& a, const RealBall& b);
RealBall hull(const RealBall& a, const RealBall& b);
/// Exact ball sitting on the upper (resp. lower) endpoint.
RealBall upper_ball(const RealBall& x);
RealBall lower_ball(const RealBall& x);

bool certainly_lt(const RealBall& a, const RealBall& b);
bool certainly_gt(const RealBall& a, const RealBall& b);
bool certainly_le(const RealBall& a, const RealBall& b);

class ComplexBall {
 public:
  ComplexBall() = default;
  explicit ComplexBall(RealBall re) : re_(std::move(re)), im_() {}
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }
  Bits bits() const;

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool overlaps(const ComplexBall& other) const {
    return re_.overlaps(other.re_) && im_.overlaps(other.im_);
  }
  /// Midpoints with zero radius.
  ComplexBall mid_point() const;

  ComplexBall conj() const { return {re_, -im_}; }
  ComplexBall operator-() const { return {-re_, -im_}; }
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const RealBall& b);
  ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
  ComplexBall& operator-=(const ComplexBall& b) { return *this = *this - b; }
  ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }

 private:
  RealBall re_;
  RealBall im_;
};

/// |z|^2 and |z|.
RealBall norm(const ComplexBall& z);
RealBall abs(const ComplexBall& z);
ComplexBall pow(const ComplexBall& z, long n);

/// Decimal rendering used by JSON output: midpoint with enough digits to
/// round-trip, radius rounded up to 20 digits.
std::string to_decimal(const Mpfr& x);
std::string to_decimal_up(const Mpfr& x);

}  // namespace recur
