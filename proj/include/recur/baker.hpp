#pragma once

// Matveev's lower bound for linear forms in logarithms and the constants
// ledger that turns a pair of recurrences into a bound certificate.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "recur/algebraic.hpp"
#include "recur/recurrence.hpp"

namespace recur {

/// One weight A_j >= max{d_K h(eta_j), |log eta_j|, 0.16}.
struct MatveevWeight {
  RealBall value;
  std::string provenance;
};

struct MatveevInput {
  int t = 1;
  BigInt field_degree = 1;
  std::vector<MatveevWeight> weights;
  /// max |b_j| (raised to 3 if smaller).
  RealBall b_max;
};

/// max{d h, |log eta|, 0.16} as an exact upper ball, with a provenance note.
MatveevWeight matveev_weight(const BigInt& field_degree, const RealBall& height_upper,
                             const RealBall& abs_log_upper, Bits prec);

/// -3 30^{t+4} (t+1)^{5.5} d^2 (1 + log d) (1 + log tB) A_1 ... A_t.
/// Throws std::invalid_argument when an input invariant fails.
RealBall matveev_log_lower_bound(const MatveevInput& input, Bits prec);

/// (log c_7 - log(|A_1|/2)) / log|alpha_1|, rounded up.
RealBall gap_c8(const RealBall& c7, const RealBall& abs_a1, const RealBall& log_alpha);
/// max(0, log(3|A_1|/2) / log|alpha_1|), rounded up.
RealBall gap_c9(const RealBall& abs_a1, const RealBall& log_alpha);

enum class LedgerMode { PaperFaithful, Tightened };
std::string to_string(LedgerMode mode);
LedgerMode ledger_mode_from_string(const std::string& s);

struct CertifyConfig {
  Bits precision = kDefaultPrecision;
  long max_denominator = 64;
  LedgerMode mode = LedgerMode::Tightened;
};

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ConstantsLedger {
  LedgerMode mode = LedgerMode::Tightened;
  /// delta_a, delta_b, c_2 ... c_16, c_0, c_1 and auxiliary quantities.
  std::map<std::string, RealBall> constants;
  /// Every "large enough" condition of the proof, by name.
  std::map<std::string, RealBall> thresholds;
  std::map<std::string, std::string> notes;
  /// Index m where B_1 beta_1^m + B_2 beta_2^m vanishes, if any.
  std::optional<long> gap_exception;

  const RealBall& at(const std::string& name) const;
};

struct BoundCertificate {
  RecurrenceSpec spec_a;
  RecurrenceSpec spec_b;
  std::vector<HypothesisCheck> hypotheses;
  DominanceReport dominance_a;
  DominanceReport dominance_b;
  BinetDecomposition binet_a;
  BinetDecomposition binet_b;
  DependenceWitness witness;
  ConstantsLedger ledger;
  Bits precision = 0;
  long max_denominator = 0;

  /// log|alpha_1| / log|beta_1| = q / p.
  BigRat delta() const { return witness.delta; }
  /// log|beta_1| / log|alpha_1|, the exponent used in n - delta m.
  BigRat gap_delta() const { return 1 / witness.delta; }
};

inline constexpr const char* kCertificateSchema = "recur-certificate/1";

/// Runs every hypothesis check in order and assembles the ledger. Throws
/// HypothesisFailed, DependenceUnknown, PrecisionExceeded or ModeUnavailable.
BoundCertificate certify(const RecurrenceSpec& a, const RecurrenceSpec& b, const CertifyConfig& config);

nlohmann::json to_json(const BoundCertificate& cert);
nlohmann::json ball_json(const RealBall& x);
nlohmann::json to_json(const DominanceReport& report);
/// Summary only: dominant |coefficient|, heights and the tail bound.
nlohmann::json to_json(const BinetDecomposition& binet);

/// Counts for one inequality checked against exact terms.
struct InequalityTally {
  std::string name;
  long from = 0;
  long to = 0;
  long checked = 0;
  long violations = 0;
  long undecided = 0;
};

/// Checks |a_n - A_1 alpha_1^n| < c_2 |alpha_1|^{delta_a n}, c_3|alpha_1|^n < |a_n| < c_4|alpha_1|^n,
/// |b_m - (B_1 beta_1^m + B_2 beta_2^m)| < c_5 |beta_1|^{delta_b m} and
/// |beta_1|^{m - 2 c_6 log m} < |b_m| < 2 c_7 |beta_1|^m, each from its ledger
/// threshold up to `upto`. A range starting beyond `upto` is reported empty.
std::vector<InequalityTally> check_growth_inequalities(const BoundCertificate& cert, long upto);

}  // namespace recur
