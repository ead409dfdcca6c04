#pragma once

// Integer linear recurrences g_{n+k} = p_{k-1} g_{n+k-1} + ... + p_0 g_n,
// exact term evaluation in both directions, and Binet decompositions.

#include <string>
#include <vector>

#include "json.hpp"
#include "recur/numerics.hpp"
#include "recur/poly.hpp"
#include "recur/roots.hpp"

namespace recur {

struct RecurrenceSpec {
  int order = 0;
  /// p_0 first.
  std::vector<BigInt> coeffs;
  /// g_0 ... g_{k-1}.
  std::vector<BigInt> initial;
  std::string name;
  /// Display only: internal index n is reported as n + index_offset.
  long index_offset = 0;

  /// Throws InputError unless order >= 1, sizes match, p_0 != 0 and some
  /// initial term is nonzero.
  void validate() const;
  bool backward_extendable() const { return abs(coeffs.at(0)) == 1; }
};

/// g_n for any signed n (n < 0 needs |p_0| = 1, else NotBackwardExtendable).
BigInt eval_term(const RecurrenceSpec& spec, long n);
/// g_from ... g_to inclusive.
std::vector<BigInt> eval_range(const RecurrenceSpec& spec, long from, long to);

/// X^k - p_{k-1} X^{k-1} - ... - p_0.
IntPoly char_poly(const RecurrenceSpec& spec);

nlohmann::json to_json(const RecurrenceSpec& spec);
/// Accepts integers as decimal strings or JSON numbers. Throws InputError.
RecurrenceSpec spec_from_json(const nlohmann::json& j);
/// 16 hex digits of FNV-1a over the canonical JSON text.
std::string spec_hash(const RecurrenceSpec& spec);
std::string fnv1a_hex(const std::string& text);

/// Coefficient polynomial G_j(n) = sum_t coeffs[t] n^t of one distinct root.
struct RootCoefficients {
  int root = 0;
  int multiplicity = 1;
  std::vector<ComplexBall> coeffs;
};

struct BinetDecomposition {
  RootSet roots;
  std::vector<RootCoefficients> terms;
  DominanceKind kind = DominanceKind::Other;
  /// Indices into roots.roots, matching the dominance report.
  std::vector<int> dominant;
  /// |A_1| (real case) or |B_1| = |B_2| (pair case).
  RealBall dominant_abs;
  /// Upper bound for h(root of G), shared by all roots.
  RealBall root_height;
  /// Upper bound for the height of every Binet coefficient (Cramer + height rules).
  RealBall coefficient_height;
  /// Largest deg G_j over non-dominant roots (0 when there are none).
  int tail_degree = 0;
  /// Sum of |coefficients| over non-dominant roots (upper ball).
  RealBall tail_coefficient;
  Bits precision = 0;

  /// Position in `terms` of a root index.
  const RootCoefficients& term_of(int root) const;
};

/// Solves the generalized Vandermonde system for g_0..g_{k-1} in ball
/// arithmetic; heights are symbolic upper bounds independent of the balls.
BinetDecomposition binet_data(const RecurrenceSpec& spec, const DominanceReport& report, Bits precision);

/// sum_j G_j(n) gamma_j^n.
ComplexBall binet_eval(const BinetDecomposition& binet, long n);

/// Exact decision whether the dominant coefficient polynomial is nonzero:
/// refine until its ball excludes 0 or drops below the Liouville bound
/// exp(-k! * h), where h bounds its height.
bool dominant_coefficient_nonzero(const RecurrenceSpec& spec, const BinetDecomposition& binet);

/// log ||G||_2 + deg(G) log 2, an upper bound for the height of any root of G.
RealBall root_height_bound(const IntPoly& g, Bits prec);

/// k! as an exact integer.
BigInt factorial(long k);

}  // namespace recur
