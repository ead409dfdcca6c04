#pragma once

// Dense univariate polynomials over Z, coefficients in ascending degree order.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recur/numerics.hpp"

namespace recur {

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  /// c * X^n.
  static IntPoly monomial(const BigInt& c, int n);
  static IntPoly x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  /// Coefficient of X^i (zero beyond the degree).
  BigInt coeff(int i) const;
  const BigInt& lead() const;

  IntPoly operator-() const;
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const BigInt& s);
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  BigInt eval(const BigInt& x) const;
  BigRat eval(const BigRat& x) const;
  RealBall eval(const RealBall& x) const;
  ComplexBall eval(const ComplexBall& x) const;

  IntPoly derivative() const;
  /// gcd of the coefficients, nonnegative.
  BigInt content() const;
  /// f / content(f), keeping the sign of the leading coefficient.
  IntPoly primitive_part() const;
  /// Primitive part with positive leading coefficient.
  IntPoly normalized() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

/// Exact quotient f/g over Z if g divides f with an integer quotient.
std::optional<IntPoly> exact_div(const IntPoly& f, const IntPoly& g);
/// Pseudo-remainder: lc(g)^(deg f - deg g + 1) f mod g.
IntPoly pseudo_rem(const IntPoly& f, const IntPoly& g);
/// True when g divides f over Q.
bool divides(const IntPoly& g, const IntPoly& f);
/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& f, const IntPoly& g);

/// Product of the distinct irreducible factors of f, primitive, with the sign
/// of the input's leading coefficient.
IntPoly squarefree_part(const IntPoly& f);
/// Yun decomposition f = c * prod g_i^i with g_i squarefree and pairwise
/// coprime; returns (g_i, i) for the non-constant g_i.
std::vector<std::pair<IntPoly, int>> squarefree_factorization(const IntPoly& f);

/// Res(f, g) via the Sylvester determinant. Throws std::invalid_argument on
/// a zero polynomial.
BigInt resultant(const IntPoly& f, const IntPoly& g);
/// Sylvester determinant with formal degrees df >= deg f, dg >= deg g.
BigInt resultant_formal(const IntPoly& f, int df, const IntPoly& g, int dg);

/// X^deg(f) f(1/X). Throws std::invalid_argument when f(0) = 0.
IntPoly reverse(const IntPoly& f);
/// f(g(X)).
IntPoly compose(const IntPoly& f, const IntPoly& g);
/// f(-X).
IntPoly negate_variable(const IntPoly& f);

/// Integer polynomial through (x_i, y_i); throws if the interpolant is not integral.
IntPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigRat>& ys);

/// Polynomial whose roots include every r/s (f(r) = 0, g(s) = 0). Requires g(0) != 0.
IntPoly ratio_poly(const IntPoly& f, const IntPoly& g);
/// Polynomial whose roots include every r*s.
IntPoly product_poly(const IntPoly& f, const IntPoly& g);
/// Polynomial whose roots are the r^e (with multiplicity), e >= 1.
IntPoly power_poly(const IntPoly& f, long e);

/// log of the Euclidean norm of the coefficient vector.
RealBall log_l2_norm(const IntPoly& f, Bits prec);

}  // namespace recur
