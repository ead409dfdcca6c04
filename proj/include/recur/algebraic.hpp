#pragma once

// Algebraic numbers as (minimal polynomial, isolating disk) pairs, Weil
// heights, root-of-unity decisions and multiplicative dependence.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "recur/numerics.hpp"
#include "recur/poly.hpp"
#include "recur/roots.hpp"

namespace recur {

class AlgebraicNumber {
 public:
  AlgebraicNumber() = default;
  /// `minpoly` must be irreducible; `index` selects a root of `roots`.
  AlgebraicNumber(IntPoly minpoly, RootSet roots, int index);

  static AlgebraicNumber from_integer(const BigInt& v);
  static AlgebraicNumber from_rational(const BigRat& v);
  /// The root of `f` lying in the isolating disk `root` of some isolation of f.
  static AlgebraicNumber from_root(const IntPoly& f, const ComplexBall& root, Bits precision);

  const IntPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  const RootSet& conjugates() const { return roots_; }
  int index() const { return index_; }
  const IsolatedRoot& root() const { return roots_.roots[static_cast<size_t>(index_)]; }
  bool is_real() const { return root().real; }
  Bits precision() const { return roots_.precision; }

  /// Enclosure of the value at the stored precision.
  ComplexBall value() const { return root().enclosure(); }
  /// Same number isolated at (at least) `prec` bits.
  AlgebraicNumber refined(Bits prec) const;

  AlgebraicNumber conj() const;
  AlgebraicNumber negate() const;

 private:
  IntPoly minpoly_;
  RootSet roots_;
  int index_ = 0;
};

/// Exact equality: same minimal polynomial and same root.
bool equals(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Irreducible factor of `candidate` vanishing at the number enclosed by
/// `target(prec)`; `target` must always enclose a root of `candidate`.
AlgebraicNumber select_factor(const IntPoly& candidate,
                              const std::function<ComplexBall(Bits)>& target, Bits precision);

/// Distinct irreducible factors over Z (primitive, positive leading
/// coefficient) of a polynomial of degree >= 1.
std::vector<IntPoly> irreducible_factors(const IntPoly& f, Bits precision);

/// eta / theta.
AlgebraicNumber ratio_min_poly(const AlgebraicNumber& eta, const AlgebraicNumber& theta);
/// eta * theta.
AlgebraicNumber product(const AlgebraicNumber& eta, const AlgebraicNumber& theta);
/// eta^e, e >= 1.
AlgebraicNumber power(const AlgebraicNumber& eta, long e);

/// Ball of width <= tolerance containing the absolute logarithmic height.
RealBall weil_height(const AlgebraicNumber& eta, double tolerance);

struct RootOfUnity {
  bool is_root = false;
  long order = 0;
};
/// Total symbolic decision: the minimal polynomial must be cyclotomic.
RootOfUnity is_root_of_unity(const AlgebraicNumber& eta);

/// Expression tree for upper bounds by the rules
/// h(x +- y) <= h(x) + h(y) + log 2, h(x y^{+-1}) <= h(x) + h(y), h(x^u) = |u| h(x).
class HeightExpr {
 public:
  enum class Op { Leaf, Add, Sub, Mul, Div, Pow };

  static HeightExpr leaf(const RealBall& height, std::string label = {});
  static HeightExpr add(const HeightExpr& a, const HeightExpr& b);
  static HeightExpr sub(const HeightExpr& a, const HeightExpr& b);
  static HeightExpr mul(const HeightExpr& a, const HeightExpr& b);
  static HeightExpr div(const HeightExpr& a, const HeightExpr& b);
  static HeightExpr pow(const HeightExpr& a, const BigRat& u);

  /// Exact ball at the upper endpoint of the composed bound.
  RealBall bound(Bits prec) const;
  std::string describe() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct DependenceWitness {
  /// alpha^(2p) = gamma^q with p, q > 0 coprime.
  long p = 0;
  long q = 0;
  /// q / p = log alpha / log sqrt(gamma).
  BigRat delta;
  std::vector<std::string> transcript;
};

struct DependenceResult {
  std::optional<DependenceWitness> witness;
  std::vector<std::string> transcript;
};

/// Searches p, q with max(p, q) bounded by the continued-fraction expansions
/// of log gamma / (2 log alpha) and its inverse. Each candidate is either
/// certified nonzero on 2p log alpha - q log gamma or checked exactly.
DependenceResult multiplicative_dependence(const AlgebraicNumber& alpha, const AlgebraicNumber& gamma,
                                           long max_denominator, Bits precision);

}  // namespace recur
