#pragma once

// Recurrence pairs built to satisfy the certification hypotheses: a real
// dominant root against a complex dominant pair whose moduli are
// multiplicatively dependent.

#include <string>
#include <vector>

#include "json.hpp"
#include "recur/poly.hpp"
#include "recur/recurrence.hpp"

namespace recur {

enum class FamilyCase { CaseI, CaseII, Bravo };
std::string to_string(FamilyCase c);
FamilyCase family_case_from_string(const std::string& s);

struct FamilyParams {
  FamilyCase family = FamilyCase::CaseI;
  long a = 0;
  long b = 0;
  /// Case I only: A gets the root sign * b^{q/2}, B gets X^2 + aX + b^p.
  long p = 1;
  long q = 1;
  int sign = 1;
  /// Monic padding factors of A and B (Cases I and II).
  IntPoly pad_a = IntPoly{1};
  IntPoly pad_b = IntPoly{1};
  /// Initial terms; empty means the impulse (0, ..., 0, 1). For Bravo,
  /// initial_a is (f_0, f_1, f_2) and initial_b is ignored.
  std::vector<BigInt> initial_a;
  std::vector<BigInt> initial_b;
};

struct FamilyPair {
  RecurrenceSpec a;
  RecurrenceSpec b;
  /// Clauses verified, in order, with the evaluated quantity.
  std::vector<std::string> checks;
};

/// A = (X - sign b^{q/2}) P_1, B = (X^2 + aX + b^p) P_2.
FamilyPair build_case_i(const FamilyParams& params, Bits prec = kDefaultPrecision);
/// A = Q P_1, B = X^3 Q(1/X) P_2 with Q = X^3 + aX^2 + bX + 1.
FamilyPair build_case_ii(const FamilyParams& params, Bits prec = kDefaultPrecision);
/// f_{n+3} = a f_{n+2} + b f_{n+1} + f_n against its backward branch
/// b_m = f_{-m}.
FamilyPair build_bravo_pair(long a, long b, const BigInt& f0, const BigInt& f1, const BigInt& f2,
                            Bits prec = kDefaultPrecision);
FamilyPair build_family(const FamilyParams& params, Bits prec = kDefaultPrecision);

/// Keys: family ("case-i" | "case-ii" | "bravo"), a, b, p, q, sign,
/// pad_a / pad_b (coefficients, constant term first), initial_a, initial_b.
FamilyParams family_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FamilyPair& pair);

/// Monic G with G(0) != 0 as the recurrence it is the characteristic
/// polynomial of.
RecurrenceSpec spec_from_char_poly(const IntPoly& g, std::vector<BigInt> initial, std::string name);

}  // namespace recur
