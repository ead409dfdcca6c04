#pragma once

// Certified isolation of complex roots and dominance classification.

#include <optional>
#include <string>
#include <vector>

#include "recur/numerics.hpp"
#include "recur/poly.hpp"

namespace recur {

struct IsolatedRoot {
  /// Disk center; both components are exact points.
  ComplexBall center;
  /// Radius of a disk around `center` containing exactly one root.
  Mpfr radius;
  int multiplicity = 1;
  bool real = false;
  /// Index of the complex conjugate within the owning RootSet (itself when real).
  int conj_index = -1;

  /// Square box containing the disk.
  ComplexBall enclosure() const;
  /// Ball containing |root|.
  RealBall modulus() const;
};

struct RootSet {
  std::vector<IsolatedRoot> roots;
  Bits precision = 0;
};

/// Isolates the distinct roots of f; multiplicities come from the
/// square-free decomposition. Roots are ordered by decreasing real part, then
/// decreasing imaginary part. Throws PrecisionExceeded at the ceiling and
/// std::invalid_argument for constant or zero f.
RootSet isolate_roots(const IntPoly& f, Bits precision);

/// For a ball `z` known to contain a root of the isolated polynomial: the
/// index of the only disk meeting `z`, or nullopt when several may.
std::optional<int> locate(const RootSet& set, const ComplexBall& z);

/// Index in `fresh` of the root isolated by `old` (an isolation of the same
/// polynomial): the unique disk meeting old's box, else the unique disk inside
/// old's disk. nullopt when neither rule decides.
std::optional<int> track_root(const RootSet& fresh, const IsolatedRoot& old);

enum class DominanceKind { RealDominant, ComplexPairDominant, Other };
std::string to_string(DominanceKind kind);

struct DominanceReport {
  IntPoly poly;
  RootSet roots;
  DominanceKind kind = DominanceKind::Other;
  /// Roots of maximal modulus (one real root, or {upper-half-plane, conjugate}).
  std::vector<int> dominant;
  int dominant_multiplicity = 0;
  /// Root of largest modulus outside the dominant group, if any.
  std::optional<int> subdominant;
  RealBall dominant_modulus;
  /// Modulus of the subdominant root; exact 0 when there is none.
  RealBall second_modulus;
  /// Exact modulus ties found symbolically among distinct roots, as index pairs.
  std::vector<std::pair<int, int>> modulus_ties;
  std::string reason;
};

/// Classifies the maximal-modulus roots of f. Equal moduli of distinct roots
/// are decided exactly through the polynomial whose roots are the pairwise
/// products of roots of f.
DominanceReport dominance_profile(const IntPoly& f, Bits precision);

/// (1 + log|second| / log|dominant|) / 2 clamped to [0, 1); 0 without a
/// subdominant root. Requires a RealDominant or ComplexPairDominant report.
RealBall decay_exponent(const DominanceReport& report);

/// Ball containing the largest root modulus; exact 0 for constants.
RealBall max_root_size(const IntPoly& p, Bits precision);

}  // namespace recur
