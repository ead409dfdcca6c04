#pragma once

// Desk-scale exact enumeration of common values a_n = b_m, of repeated
// values f_n = f_m on one two-sided sequence, and of the main inequality
// |a_n - b_m| > |a_n|^{1 - c_0 log^2 n / n} on a finite grid.

#include <string>
#include <vector>

#include "json.hpp"
#include "recur/baker.hpp"
#include "recur/recurrence.hpp"

namespace recur {

struct SearchConfig {
  /// Cap on the estimated bytes held by the term store.
  std::size_t memory_cap_bytes = std::size_t{2} << 30;
  int threads = 1;
};

struct CommonValueHit {
  long n = 0;
  long m = 0;
  BigInt value;
};

/// Hash join of {(n, a_n)} and {(m, b_m)} for n in [-N, N] (or [0, N]) and
/// likewise m. Hits are sorted by (n, m). Throws NotBackwardExtendable or
/// MemoryGuardExceeded.
std::vector<CommonValueHit> enumerate_common_values(const RecurrenceSpec& a, const RecurrenceSpec& b, long n_max,
                                                    long m_max, bool include_negative,
                                                    const SearchConfig& config = {});

struct ValueGroup {
  BigInt value;
  std::vector<long> indices;
};

/// Values taken at least twice by f_n, n in [-N, N], sorted by value.
std::vector<ValueGroup> self_intersections(const RecurrenceSpec& f, long n_max, const SearchConfig& config = {});
/// The groups as pairs (n, m, value) with n < m, sorted.
std::vector<CommonValueHit> intersection_pairs(const std::vector<ValueGroup>& groups);

enum class Verdict { Holds, Fails, Undecided };
std::string to_string(Verdict v);

/// |a_n - b_m| > |a_n|^{1 - c_0 log^2 n / n} with the certificate's c_0.
/// n < 2 and a_n = 0 count as holding vacuously.
Verdict check_inequality(const BoundCertificate& cert, long n, long m);

struct InequalityFailure {
  long n = 0;
  long m = 0;
  bool exact_hit = false;
  bool below_threshold = false;
};

struct InequalityReport {
  long n_max = 0;
  long m_max = 0;
  long holds = 0;
  long fails = 0;
  long undecided = 0;
  std::vector<InequalityFailure> failures;
  Bits precision = 0;
  /// Every failure is an exact hit or has max(n, m) <= c_1.
  bool consistent = true;
};

/// Sweeps 0 <= n <= N, 0 <= m <= M.
InequalityReport verify_no_violation(const BoundCertificate& cert, long n_max, long m_max,
                                     const SearchConfig& config = {});

/// Exponent-gap laws on hits a_n = b_m of a certified pair, with
/// d = log|beta_1| / log|alpha_1|: -c_10 log m < n - d m < c_8 and
/// d m / 2 < n < 2 d m. The laws are proven only where the growth bounds
/// apply (n >= n_3 and m beyond the b-side thresholds, and for the weak law
/// also m > m_gap_weak); hits below that are also checked and reported
/// separately.
struct HitLawReport {
  long hits = 0;
  /// Past the thresholds.
  long gap_checked = 0;
  long gap_violations = 0;
  long weak_checked = 0;
  long weak_violations = 0;
  /// All hits with n, m >= 2, informational.
  long unconditional_checked = 0;
  long unconditional_gap_violations = 0;
  long unconditional_weak_violations = 0;
  long undecided = 0;
  RealBall gap_threshold_m;
  RealBall weak_threshold_m;
};

HitLawReport check_hit_law(const BoundCertificate& cert, const std::vector<CommonValueHit>& hits);

extern const char* const kDeskScaleBanner;

nlohmann::json to_json(const CommonValueHit& hit);
nlohmann::json to_json(const ValueGroup& group);
nlohmann::json to_json(const InequalityReport& report);
nlohmann::json to_json(const HitLawReport& report);

}  // namespace recur
